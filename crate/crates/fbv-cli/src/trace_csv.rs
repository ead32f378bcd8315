//! CSV serialization of simulation traces. Header cells are
//! `wire:domain` so a trace file can be parsed back without the netlist.

use std::io::Write;

use anyhow::{bail, Context, Result};

use fbv_core::value::{Domain, PbOutput, PbStatus, TripEnum};
use fbv_core::{Duration, TickDomain, Trajectory, Value};

fn domain_tag(d: Domain) -> &'static str {
    match d {
        Domain::Bool => "bool",
        Domain::Time => "time",
        Domain::Trip => "trip",
        Domain::PbStatus => "pb_status",
        Domain::PbOutput => "pb_output",
    }
}

fn parse_domain(tag: &str) -> Result<Domain> {
    Ok(match tag {
        "bool" => Domain::Bool,
        "time" => Domain::Time,
        "trip" => Domain::Trip,
        "pb_status" => Domain::PbStatus,
        "pb_output" => Domain::PbOutput,
        _ => bail!("unknown domain tag {tag}"),
    })
}

fn parse_value(token: &str, domain: Domain, tick_domain: &TickDomain) -> Result<Value> {
    Ok(match domain {
        Domain::Bool => Value::Bool(match token {
            "true" => true,
            "false" => false,
            _ => bail!("bad bool {token}"),
        }),
        Domain::Time => {
            let raw: u64 = token.parse().with_context(|| format!("bad time {token}"))?;
            Value::Time(Duration::new(raw, tick_domain).map_err(|e| anyhow::anyhow!("{e}"))?)
        }
        Domain::Trip => Value::Trip(match token {
            "e_Trip" => TripEnum::Trip,
            "e_NotTrip" => TripEnum::NotTrip,
            _ => bail!("bad trip value {token}"),
        }),
        Domain::PbStatus => Value::PbStatus(match token {
            "e_Pressed" => PbStatus::Pressed,
            "e_NotPressed" => PbStatus::NotPressed,
            _ => bail!("bad pushbutton status {token}"),
        }),
        Domain::PbOutput => Value::PbOutput(match token {
            "e_pbNotDebounced" => PbOutput::NotDebounced,
            "e_pbDebounced" => PbOutput::Debounced,
            "e_pbStuck" => PbOutput::Stuck,
            _ => bail!("bad pushbutton output {token}"),
        }),
    })
}

pub fn write_csv(wires: &[(String, Trajectory<Value>)], out: &mut impl Write) -> Result<()> {
    let mut header = vec!["tick".to_string()];
    for (name, traj) in wires {
        header.push(format!("{name}:{}", domain_tag(traj.at(0).domain())));
    }
    writeln!(out, "{}", header.join(","))?;
    let horizon = wires.first().map(|(_, t)| t.horizon()).unwrap_or(0);
    for t in 0..=horizon {
        let mut row = vec![t.to_string()];
        for (_, traj) in wires {
            row.push(traj.at(t).to_string());
        }
        writeln!(out, "{}", row.join(","))?;
    }
    Ok(())
}

pub fn read_csv(
    text: &str,
    tick_domain: &TickDomain,
) -> Result<Vec<(String, Trajectory<Value>)>> {
    let mut lines = text.lines();
    let header = lines.next().context("empty trace")?;
    let mut cols: Vec<(String, Domain)> = Vec::new();
    for (i, cell) in header.split(',').enumerate() {
        if i == 0 {
            if cell != "tick" {
                bail!("first column must be tick, got {cell}");
            }
            continue;
        }
        let (name, tag) = cell
            .rsplit_once(':')
            .with_context(|| format!("header cell {cell} lacks a domain tag"))?;
        cols.push((name.to_string(), parse_domain(tag)?));
    }
    let mut values: Vec<Vec<Value>> = vec![Vec::new(); cols.len()];
    for (row_idx, line) in lines.enumerate() {
        let cells: Vec<&str> = line.split(',').collect();
        if cells.len() != cols.len() + 1 {
            bail!("row {row_idx} has {} cells, expected {}", cells.len(), cols.len() + 1);
        }
        let tick: usize = cells[0].parse().with_context(|| format!("bad tick {}", cells[0]))?;
        if tick != row_idx {
            bail!("rows out of order: expected tick {row_idx}, got {tick}");
        }
        for (ci, cell) in cells[1..].iter().enumerate() {
            values[ci].push(parse_value(cell, cols[ci].1, tick_domain)?);
        }
    }
    cols.into_iter()
        .zip(values)
        .map(|((name, _), vals)| {
            Trajectory::new(vals, tick_domain)
                .map(|t| (name, t))
                .map_err(|e| anyhow::anyhow!("{e}"))
        })
        .collect()
}
