use particle_engine::*;
use proptest::prelude::*;

#[test]
fn hand_trace_blocking_then_jump() {
    // label 0 (rate 0.6) at site 1, label 1 at site 0
    let s = SystemState::from_parts(0, vec![1, 0], vec![0.6, 1.0]).unwrap();
    let clocks = ScriptedClocks::new(1.0).ring(1, 0.4, 0.2).ring(0, 0.9, 0.5);
    let mut run = s.clone();
    run.record_jumps();
    advance(&mut run, &clocks, 1.0).unwrap();
    assert_eq!(run.suppression_log, vec![(0.4, 1)]);
    assert_eq!(run.jump_log().unwrap(), &[(0.9, 0)]);
    assert_eq!(run.positions(), &[2, 0]);

    let tr = sweep(&s, &clocks, 1.0).unwrap();
    assert_eq!(tr.suppressions_of(1), &[0.4]);
    let path = particle_engine::diagnostics::backward_index_path(&tr, 1, 1.0).unwrap();
    assert_eq!(path.value(0.5), 1);
    assert_eq!(path.value(0.4), 0);
    assert_eq!(path.value(0.1), 0);
}

#[test]
fn zero_elapsed_time_changes_nothing() {
    let c = ClockField::new(3, 10.0).unwrap();
    let s = make_initial(InitialKind::Shock { m: 1, alpha: 0.25 }, 10, 10.0).unwrap();
    let mut v = vec![s.clone()];
    advance_coupled(&mut v, &c, 0.0).unwrap();
    assert_eq!(v[0].positions(), s.positions());
    assert!(v[0].suppression_log.is_empty());
}

#[test]
fn horizon_and_time_errors() {
    let c = ClockField::new(3, 10.0).unwrap();
    let s = make_initial(InitialKind::Step, 3, 10.0).unwrap();
    let mut a = s.clone();
    assert!(matches!(advance(&mut a, &c, 11.0), Err(EngineError::BeyondHorizon { .. })));
    let mut later = s.clone();
    later.time = 1.0;
    let mut v = vec![s, later];
    assert!(matches!(advance_coupled(&mut v, &c, 5.0), Err(EngineError::TimeMismatch(..))));
}

#[test]
fn free_particle_displacement_is_poisson() {
    let t = 7.0;
    let trials = 100_000u64;
    let s = SystemState::from_parts(1, vec![0], vec![1.0]).unwrap();
    let mut sum = 0.0;
    for k in 0..trials {
        let c = ClockField::new(derive_seed(11, k), t).unwrap();
        sum += sweep_final(&s, &c, t).unwrap()[0] as f64;
    }
    let mean = sum / trials as f64;
    assert!((mean - t).abs() <= 3.0 * (t / trials as f64).sqrt(), "mean {mean}");
}

#[test]
fn flat_pad_doubling_leaves_tracked_path_unchanged() {
    let (n, t) = (100, 50.0);
    for seed in 0..10 {
        let c = ClockField::new(seed, t).unwrap();
        let s = make_initial(InitialKind::Flat, n, t).unwrap();
        let wide = SystemState::from_parts(
            n - 2 * light_cone_pad(t),
            (n - 2 * light_cone_pad(t)..=n).map(|l| -2 * l).collect(),
            vec![1.0; 2 * light_cone_pad(t) as usize + 1],
        )
        .unwrap();
        let a = sweep(&s, &c, t).unwrap();
        let b = sweep(&wide, &c, t).unwrap();
        assert_eq!(a.jumps_of(n), b.jumps_of(n));
    }
}

#[test]
fn exclusion_over_a_million_events() {
    let t = 400.0;
    let c = ClockField::new(77, t).unwrap();
    let s = make_initial(InitialKind::Shock { m: 3, alpha: 0.3 }, 2500, t).unwrap();
    let tr = sweep(&s, &c, t).unwrap();
    let events: usize = tr.jumps.iter().chain(&tr.suppressions).map(Vec::len).sum();
    assert!(events > 1_000_000);
    for k in 0..=40 {
        let s = 10.0 * k as f64;
        let mut prev = i64::MAX;
        for l in tr.first_label..=tr.last_label() {
            let x = tr.position_at(l, s);
            assert!(x < prev);
            prev = x;
        }
    }
}

#[test]
fn attractive_domination() {
    for seed in 0..20 {
        let t = 80.0;
        let c = ClockField::new(seed, t).unwrap();
        let s = make_initial(InitialKind::Shock { m: 2, alpha: 0.2 }, 40, t).unwrap();
        let a = make_initial(InitialKind::HalfFlatA, 40, t).unwrap();
        let b = make_initial(InitialKind::SlowStepB { m: 2, alpha: 0.2 }, 40, t).unwrap();
        let v = sweep_coupled(&[&s, &a, &b], &c, t).unwrap();
        for n in 1..=40 {
            let mut times: Vec<f64> = v.iter().flat_map(|r| r.jumps_of(n).iter().copied()).collect();
            times.push(0.0);
            for &u in &times {
                let x = v[0].position_at(n, u);
                assert!(x <= v[1].position_at(n, u) && x <= v[2].position_at(n, u));
            }
        }
    }
}

#[test]
fn degenerate_alpha_one_identity() {
    let t = 50.0;
    let c = ClockField::new(5, t).unwrap();
    let s = make_initial(InitialKind::Shock { m: 1, alpha: 1.0 }, 30, t).unwrap();
    let a = make_initial(InitialKind::HalfFlatA, 30, t).unwrap();
    let b = make_initial(InitialKind::SlowStepB { m: 1, alpha: 1.0 }, 30, t).unwrap();
    let v = sweep_coupled(&[&s, &a, &b], &c, t).unwrap();
    let labels: Vec<i64> = (1..=30).collect();
    assert!(diagnostics::min_identity_check(&v[0], &v[1], &v[2], &labels, t).into_iter().all(|x| x));
}

#[test]
fn export_round_trip_columns() {
    let c = ClockField::new(2, 5.0).unwrap();
    let s = make_initial(InitialKind::Step, 4, 5.0).unwrap();
    let tr = sweep(&s, &c, 5.0).unwrap();
    let mut buf = Vec::new();
    export::write_trajectory_csv(&tr, &mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("time,label,position,event_kind"));
    let rows: Vec<_> = lines.collect();
    let jumps: usize = tr.jumps.iter().map(Vec::len).sum();
    let supp: usize = tr.suppressions.iter().map(Vec::len).sum();
    assert_eq!(rows.len(), jumps + supp);
    assert!(rows.iter().all(|r| r.ends_with(",jump") || r.ends_with(",suppressed")));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn sweep_equals_event_queue(seed in any::<u64>(), m in 1usize..4, alpha in 0.05f64..1.0, n in 1i64..25, t in 0.5f64..40.0) {
        let c = ClockField::new(seed, t).unwrap();
        let s = make_initial(InitialKind::Shock { m, alpha }, n, t).unwrap();
        let a = make_initial(InitialKind::HalfFlatA, n, t).unwrap();
        let mut q = vec![s.clone(), a.clone()];
        for x in &mut q { x.record_jumps(); }
        advance_coupled(&mut q, &c, t).unwrap();
        let sw = sweep_coupled(&[&s, &a], &c, t).unwrap();
        prop_assert_eq!(Trajectory::from_logs(&s, &q[0]).unwrap(), sw[0].clone());
        prop_assert_eq!(Trajectory::from_logs(&a, &q[1]).unwrap(), sw[1].clone());
    }

    #[test]
    fn split_advance_equals_single(seed in any::<u64>(), n in 1i64..20, t in 1.0f64..30.0, frac in 0.0f64..1.0) {
        let c = ClockField::new(seed, t).unwrap();
        let s = make_initial(InitialKind::Step, n, t).unwrap();
        let mut one = s.clone();
        advance(&mut one, &c, t).unwrap();
        let mut two = s.clone();
        advance(&mut two, &c, frac * t).unwrap();
        advance(&mut two, &c, t).unwrap();
        prop_assert_eq!(one, two);
    }

    #[test]
    fn label_insulation(seed in any::<u64>(), n in 2i64..30, cut in 1i64..30, t in 1.0f64..30.0) {
        let cut = cut.min(n);
        let c = ClockField::new(seed, t).unwrap();
        let full = make_initial(InitialKind::HalfFlatA, n, t).unwrap();
        let mut part = full.clone();
        part.truncate_after(cut);
        let a = sweep(&full, &c, t).unwrap();
        let b = sweep(&part, &c, t).unwrap();
        for l in 1..=cut {
            prop_assert_eq!(a.jumps_of(l), b.jumps_of(l));
        }
    }

    #[test]
    fn determinism(seed in any::<u64>()) {
        let c = ClockField::new(seed, 20.0).unwrap();
        let s = make_initial(InitialKind::Shock { m: 2, alpha: 0.4 }, 15, 20.0).unwrap();
        let mut x = s.clone();
        let mut y = s.clone();
        advance(&mut x, &c, 20.0).unwrap();
        advance(&mut y, &ClockField::new(seed, 20.0).unwrap(), 20.0).unwrap();
        prop_assert_eq!(x, y);
    }
}
