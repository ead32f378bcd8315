//! Golden-file checks for the shipped artifacts: the netlist JSON files in
//! `netlists/` must match the built-in constructors, and the demo timing
//! diagram must be byte-identical. Set `UPDATE_GOLDEN=1` to regenerate.

use std::path::{Path, PathBuf};
use std::process::Command;

use fbv_core::netlist::Netlist;
use fbv_core::subsystems::{
    pushbutton_netlist, trip_sealedin_original, trip_sealedin_revised, PushbuttonConsts,
    SealedInConsts,
};
use fbv_core::{Duration, TickDomain};

fn repo_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..").canonicalize().unwrap()
}

fn check_golden(path: &Path, generated: &str) {
    if std::env::var("UPDATE_GOLDEN").is_ok() {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(path, generated).unwrap();
        return;
    }
    let saved = std::fs::read_to_string(path)
        .unwrap_or_else(|e| panic!("missing golden file {}: {e}", path.display()));
    assert_eq!(saved, generated, "stale golden file {}", path.display());
}

/// The shipped netlists use delta = 1 with the same constants the default
/// verification runs pin.
fn shipped_netlists() -> Vec<(&'static str, Netlist)> {
    let d = TickDomain::new(1, 8).unwrap();
    let dur = |n| Duration::of_ticks(n, &d);
    let sealedin = SealedInConsts::new(dur(3), dur(1), dur(1)).unwrap();
    let pushbutton = PushbuttonConsts::new(dur(4), dur(8), dur(2), dur(2)).unwrap();
    vec![
        ("trip_sealedin_original.json", trip_sealedin_original(&sealedin)),
        ("trip_sealedin_revised.json", trip_sealedin_revised(&sealedin)),
        ("pushbutton.json", pushbutton_netlist(&pushbutton)),
    ]
}

#[test]
fn netlist_files_match_builders() {
    for (file, net) in shipped_netlists() {
        let mut text = serde_json::to_string_pretty(&net).unwrap();
        text.push('\n');
        check_golden(&repo_root().join("netlists").join(file), &text);
    }
}

#[test]
fn netlist_files_round_trip_and_validate() {
    for (file, net) in shipped_netlists() {
        let path = repo_root().join("netlists").join(file);
        let text = std::fs::read_to_string(&path).unwrap();
        let parsed: Netlist = serde_json::from_str(&text).unwrap();
        assert_eq!(parsed, net, "{file}");
        parsed.validate().unwrap();
    }
}

#[test]
fn ton_waveform_diagram_is_stable() {
    let root = repo_root();
    let out = Command::new(env!("CARGO_BIN_EXE_fbv"))
        .arg("simulate")
        .arg(root.join("scenarios/ton_waveform.json"))
        .args(["--diagram", "--wires", "in,q,et"])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let diagram = String::from_utf8(out.stdout).unwrap();
    check_golden(&root.join("crates/fbv-cli/tests/golden/ton_waveform_diagram.txt"), &diagram);
}
