//! ASCII timing diagrams: one lane per wire, one cell per tick.
//!
//! Boolean lanes use `=` (high), `_` (low), `/` (rise), `\` (fall); other
//! lanes print the value token right-aligned. Every lane shares one cell
//! width so the tick ruler lines up, which keeps diagrams diffable.

use fbv_core::{Trajectory, Value};

fn token(v: &Value) -> Option<String> {
    match v {
        Value::Bool(_) => None,
        other => Some(other.to_string()),
    }
}

fn ruler(ticks: usize, width: usize) -> String {
    let mut out = String::new();
    for t in 0..ticks {
        let cell = if t % 5 == 0 {
            format!("{:>width$}", t % 10, width = width)
        } else {
            "-".repeat(width)
        };
        out.push_str(&cell);
        if width > 1 && t + 1 < ticks {
            out.push('-');
        }
    }
    out
}

fn bool_cell(prev: Option<bool>, cur: bool, width: usize) -> String {
    let level = if cur { '=' } else { '_' };
    let glyph = match prev {
        Some(p) if p != cur => {
            if cur {
                '/'
            } else {
                '\\'
            }
        }
        _ => level,
    };
    let mut cell = String::new();
    cell.push(glyph);
    for _ in 1..width {
        cell.push(level);
    }
    cell
}

pub fn render(wires: &[(String, Trajectory<Value>)]) -> String {
    let ticks = wires.first().map(|(_, t)| t.horizon() + 1).unwrap_or(0);
    let width = wires
        .iter()
        .flat_map(|(_, traj)| traj.values().iter())
        .filter_map(token)
        .map(|s| s.len())
        .max()
        .unwrap_or(1)
        .max(1);
    let name_width = wires.iter().map(|(n, _)| n.len()).max().unwrap_or(4).max(4);
    let sep = if width > 1 { " " } else { "" };

    let mut out = String::new();
    out.push_str(&format!("{:<name_width$} {}\n", "tick", ruler(ticks, width)));
    for (name, traj) in wires {
        let mut lane = String::new();
        let mut prev_bool: Option<bool> = None;
        for t in 0..ticks {
            if t > 0 && width > 1 {
                lane.push_str(sep);
            }
            match traj.at(t) {
                Value::Bool(b) => {
                    lane.push_str(&bool_cell(prev_bool, b, width));
                    prev_bool = Some(b);
                }
                other => {
                    lane.push_str(&format!("{:>width$}", other.to_string(), width = width));
                }
            }
        }
        out.push_str(&format!("{name:<name_width$} {lane}\n"));
    }
    out
}

#[cfg(test)]
mod test {
    use super::*;
    use fbv_core::TickDomain;

    #[test]
    fn bool_lane_glyphs() {
        let d = TickDomain::new(1, 5).unwrap();
        let traj = Trajectory::from_fn(&d, |t| Value::Bool((2..=4).contains(&t)));
        let diagram = render(&[("p".to_string(), traj)]);
        let lane = diagram.lines().nth(1).unwrap();
        assert_eq!(lane, "p    __/==\\");
    }

    #[test]
    fn numeric_lane_aligns_with_ruler() {
        let d = TickDomain::new(1, 3).unwrap();
        let et = Trajectory::from_fn(&d, |t| {
            Value::Time(fbv_core::Duration::of_ticks(t as u64 * 5, &d))
        });
        let diagram = render(&[("et".to_string(), et)]);
        let mut lines = diagram.lines();
        assert_eq!(lines.next().unwrap(), "tick  0---------");
        assert_eq!(lines.next().unwrap(), "et    0  5 10 15");
    }
}
