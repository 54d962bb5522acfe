use experiments::runners::*;
use experiments::{Config, ExperimentError};

fn cfg(text: &str) -> Config {
    Config::parse(text).unwrap()
}

#[test]
fn min_identity_holds_and_the_canary_fires() {
    let r = min_identity::run(&cfg("seed=1\nalpha=0.2,0.4\nm=1,3\nt=40\ncheckpoint_step=20\ntrials=50\ncanary_trials=10")).unwrap();
    assert!(r.verdict, "{:?}", r.checks);
    let canary = r.find("broken coupling is detected").unwrap();
    assert!(canary.value > 0.0);
}

#[test]
fn min_identity_at_time_zero() {
    let r = min_identity::run(&cfg("seed=1\nalpha=0.3\nm=2\nt=1e-9\ncheckpoint_step=1\ntrials=3\ncanary_trials=0")).unwrap();
    assert_eq!(r.find("zero violations under the basic coupling").unwrap().value, 0.0);
}

#[test]
fn localization_refuses_a_macroscopic_band() {
    let e = localization::run(&cfg("seed=1\nnu=1.25\neps=0.3\nt_grid=100\ntrials=2")).unwrap_err();
    assert!(matches!(e, ExperimentError::Refused(_)), "{e}");
    assert!(localization::run(&cfg("seed=1\nnu=0.9\neps=0.1\nt_grid=1000\ntrials=2")).is_err());
    assert!(localization::run(&cfg("seed=1\nnu=1.5\neps=0.4\nt_grid=1000\ntrials=2")).is_err());
}

#[test]
fn localization_top_of_path() {
    let r = localization::run(&cfg("seed=3\nnu=1.25\neps=0.15\nt_grid=300\ntrials=4\ntau_points=16")).unwrap();
    assert!(r.find("t=300: top of the path is N").unwrap().passed);
    assert!(r.find("N-path escape fraction").is_some());
}

#[test]
fn shock_law_refuses_too_few_trials() {
    let e = shock_law::run(&cfg("seed=1\nalpha=0.25\nm=1\neta=0\nt=50\ntrials=20")).unwrap_err();
    assert!(matches!(e, ExperimentError::Refused(ref m) if m.contains("KS band")), "{e}");
}

#[test]
fn shock_law_rejects_alpha_outside_the_shock_regime() {
    assert!(matches!(shock_law::run(&cfg("seed=1\nalpha=0.5\nm=1\neta=0\nt=50\ntrials=2000")), Err(ExperimentError::Config(_))));
}

#[test]
fn slow_decorrelation_sandwich_at_small_t() {
    let r = slow_decorrelation::run(&cfg("seed=2\nalpha=0.25\nnu=0.8\neps=0.5\nt_grid=60,120\ntrials=100")).unwrap();
    assert!(r.find("pathwise sandwich").unwrap().passed);
    assert!(slow_decorrelation::run(&cfg("seed=2\nalpha=0.25\nnu=1.2\neps=0.5\nt_grid=60,120\ntrials=10")).is_err());
    assert!(slow_decorrelation::run(&cfg("seed=2\nalpha=0.25\nnu=0.8\neps=0.5\nt_grid=60\ntrials=10")).is_err());
}

#[test]
fn tails_need_many_trials() {
    assert!(matches!(tails::run(&cfg("seed=1\nt=100\ntrials=100")), Err(ExperimentError::Config(_))));
}

#[test]
fn tails_centres_and_comparisons_at_small_t() {
    let r = tails::run(&cfg("seed=4\nt=64\ntrials=2000\nmin_trials=1000")).unwrap();
    assert_eq!(r.stat_value("step.quarter.centre"), Some(0.0));
    assert_eq!(r.stat_value("flat.quarter.centre"), Some(0.0));
    assert!(r.find("half-flat nu=0.25 below is dominated by flat").unwrap().passed);
    assert!(r.find("half-flat nu=0.5 above is dominated by step").unwrap().passed);
}

#[test]
fn system_a_median_is_negative() {
    let r = system_a::run(&cfg("seed=5\nalpha=0.25\nt=200\ntrials=300\ntable_step=0.25")).unwrap();
    assert!(r.stat_value("reference_median_s").unwrap() < 0.0);
    assert!(r.find("GOE node doubling").unwrap().passed);
}

#[test]
fn direct_cdf_small_case() {
    let r = direct_cdf::run(&cfg(
        "seed=6\nalpha=0.3\nn=3\nt=2\nx=-5,-4,-3\ntrials=20000\ncondition_t=25,50\nx_table_from=-12\nx_table_to=-6\nscalar_t=400",
    ))
    .unwrap();
    assert!(r.find("direct formula against simulation").unwrap().passed, "{:?}", r.checks);
    assert!(r.find("determinant near 1 far to the left").unwrap().passed);
}
