//! Trajectory CSV: time, label, position, event_kind.

use std::io::Write;

use crate::trajectory::{EventKind, Trajectory};

pub fn write_trajectory_csv<W: Write>(run: &Trajectory, out: W) -> csv::Result<()> {
    let mut rows = run.merged_log(EventKind::Jump).into_iter().map(|(t, l, x)| (t, l, x, EventKind::Jump)).collect::<Vec<_>>();
    rows.extend(run.merged_log(EventKind::Suppressed).into_iter().map(|(t, l, x)| (t, l, x, EventKind::Suppressed)));
    rows.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["time", "label", "position", "event_kind"])?;
    for (t, l, x, k) in rows {
        w.write_record([t.to_string(), l.to_string(), x.to_string(), k.as_str().to_string()])?;
    }
    w.flush()?;
    Ok(())
}
