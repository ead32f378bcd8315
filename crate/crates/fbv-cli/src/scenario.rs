//! Scenario files: a self-contained JSON description of one simulation
//! run — tick domain, sample schedule, system under test, input
//! trajectories, and optional expectations for replaying counterexamples.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use fbv_core::netlist::{Block, BlockKind, InputDecl, Netlist};
use fbv_core::subsystems::{
    pushbutton_netlist, trip_sealedin_original, trip_sealedin_revised, PushbuttonConsts,
    SealedInConsts,
};
use fbv_core::value::Domain;
use fbv_core::{Duration, SampleSchedule, Tick, TickDomain, Trajectory, Value};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub delta: u64,
    pub horizon: Tick,
    pub schedule: ScheduleSpec,
    pub system: SystemRef,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub consts: BTreeMap<String, u64>,
    pub inputs: BTreeMap<String, InputSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub expect: Vec<Expectation>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Either explicit sample ticks or a seeded random schedule with gaps in
/// `[tmin, tmax]` (physical units).
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScheduleSpec {
    pub tmin: u64,
    pub tmax: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<Vec<Tick>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SystemRef {
    Builtin {
        subsystem: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        variant: Option<String>,
    },
    File { netlist: PathBuf },
}

/// An initial value plus a strictly increasing change list.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputSpec {
    pub init: Value,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub changes: Vec<(Tick, Value)>,
}

impl InputSpec {
    pub fn from_trajectory(traj: &Trajectory<Value>) -> Self {
        let changes = traj
            .change_points()
            .into_iter()
            .map(|t| (t, traj.at(t)))
            .collect();
        InputSpec { init: traj.at(0), changes }
    }

    pub fn to_trajectory(&self, domain: &TickDomain) -> Result<Trajectory<Value>> {
        Trajectory::from_changes(self.init.clone(), &self.changes, domain)
            .map_err(|e| anyhow::anyhow!("bad change list: {e}"))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expectation {
    pub wire: String,
    pub tick: Tick,
    pub value: Value,
}

fn get_const(consts: &BTreeMap<String, u64>, name: &str, domain: &TickDomain) -> Result<Duration> {
    let raw = *consts
        .get(name)
        .with_context(|| format!("missing constant {name}"))?;
    Duration::new(raw, domain).map_err(|e| anyhow::anyhow!("constant {name}: {e}"))
}

/// A bare on-delay timer wrapped as a system, for waveform scenarios.
pub fn ton_demo_netlist(pt: Duration) -> Netlist {
    Netlist {
        name: "ton_demo".to_string(),
        inputs: vec![InputDecl { wire: "in".to_string(), domain: Domain::Bool }],
        outputs: vec!["q".to_string(), "et".to_string()],
        blocks: vec![Block::new(
            "TON_Demo",
            BlockKind::Ton { pt },
            &[("in", "in")],
            &[("q", "q"), ("et", "et")],
        )],
        feedback: vec![],
    }
}

impl Scenario {
    pub fn load(path: &Path) -> Result<Scenario> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
    }

    pub fn domain(&self) -> Result<TickDomain> {
        TickDomain::new(self.delta, self.horizon).map_err(|e| anyhow::anyhow!("{e}"))
    }

    pub fn schedule(&self, domain: &TickDomain) -> Result<SampleSchedule> {
        let tmin = Duration::new(self.schedule.tmin, domain)
            .map_err(|e| anyhow::anyhow!("tmin: {e}"))?;
        let tmax = Duration::new(self.schedule.tmax, domain)
            .map_err(|e| anyhow::anyhow!("tmax: {e}"))?;
        let samples = match &self.schedule.samples {
            Some(s) => s.clone(),
            None => {
                let lo = (tmin.value() / domain.delta()) as Tick;
                let hi = (tmax.value() / domain.delta()) as Tick;
                let mut rng = ChaCha8Rng::seed_from_u64(self.schedule.seed.unwrap_or(0));
                let mut samples = vec![0];
                loop {
                    let next = samples.last().unwrap() + rng.gen_range(lo..=hi);
                    if next > domain.horizon() {
                        break;
                    }
                    samples.push(next);
                }
                samples
            }
        };
        SampleSchedule::new(samples, tmin, tmax, domain).map_err(|e| anyhow::anyhow!("{e}"))
    }

    /// Build the referenced network, resolving file references relative to
    /// the scenario's own directory.
    pub fn netlist(&self, base: &Path, domain: &TickDomain) -> Result<Netlist> {
        match &self.system {
            SystemRef::File { netlist } => {
                let path = if netlist.is_absolute() {
                    netlist.clone()
                } else {
                    base.join(netlist)
                };
                let text = std::fs::read_to_string(&path)
                    .with_context(|| format!("reading {}", path.display()))?;
                serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
            }
            SystemRef::Builtin { subsystem, variant } => {
                let variant = variant.as_deref();
                match (subsystem.as_str(), variant) {
                    ("trip_sealedin", Some("original")) => {
                        Ok(trip_sealedin_original(&self.sealedin_consts(domain)?))
                    }
                    ("trip_sealedin", Some("revised") | None) => {
                        Ok(trip_sealedin_revised(&self.sealedin_consts(domain)?))
                    }
                    ("pushbutton", None) => Ok(pushbutton_netlist(&self.pushbutton_consts(domain)?)),
                    ("ton", None) => {
                        Ok(ton_demo_netlist(get_const(&self.consts, "pt", domain)?))
                    }
                    _ => bail!("unknown system {subsystem} (variant {variant:?})"),
                }
            }
        }
    }

    pub fn sealedin_consts(&self, domain: &TickDomain) -> Result<SealedInConsts> {
        SealedInConsts::new(
            get_const(&self.consts, "k_sealin_delay", domain)?,
            get_const(&self.consts, "left_tol", domain)?,
            get_const(&self.consts, "right_tol", domain)?,
        )
        .map_err(|e| anyhow::anyhow!("{e}"))
    }

    pub fn pushbutton_consts(&self, domain: &TickDomain) -> Result<PushbuttonConsts> {
        PushbuttonConsts::new(
            get_const(&self.consts, "k_debounce", domain)?,
            get_const(&self.consts, "k_stuck", domain)?,
            get_const(&self.consts, "left_tol", domain)?,
            get_const(&self.consts, "right_tol", domain)?,
        )
        .map_err(|e| anyhow::anyhow!("{e}"))
    }

    pub fn input_trajectories(
        &self,
        domain: &TickDomain,
    ) -> Result<BTreeMap<String, Trajectory<Value>>> {
        self.inputs
            .iter()
            .map(|(name, spec)| {
                spec.to_trajectory(domain)
                    .with_context(|| format!("input {name}"))
                    .map(|t| (name.clone(), t))
            })
            .collect()
    }
}
