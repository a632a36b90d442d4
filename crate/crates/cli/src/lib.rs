//! Library surface of the CLI: scenario schema, runner and artifact I/O,
//! shared by the binary and the acceptance suite.

pub mod csvio;
pub mod runner;
pub mod scenario;

/// Bundled scenarios, compiled into the binary.
pub mod bundled {
    use crate::scenario::Scenario;

    pub const NAMES: &[&str] = &[
        "hankel_selftest",
        "grav_spectrum",
        "grav_conservation",
        "grav_lacuna",
        "grav_strichartz",
        "brane_grav",
        "brane_decay",
        "em_lacuna",
        "em_decay",
        "gen_decay",
        "packet_mirror",
        "lift_check",
        "oracle_halfline",
        "oracle_brane",
        "negative_controls",
    ];

    pub fn load(name: &str) -> Option<Scenario> {
        let text = match name {
            "hankel_selftest" => include_str!("../scenarios/hankel_selftest.json"),
            "grav_spectrum" => include_str!("../scenarios/grav_spectrum.json"),
            "grav_conservation" => include_str!("../scenarios/grav_conservation.json"),
            "grav_lacuna" => include_str!("../scenarios/grav_lacuna.json"),
            "grav_strichartz" => include_str!("../scenarios/grav_strichartz.json"),
            "brane_grav" => include_str!("../scenarios/brane_grav.json"),
            "brane_decay" => include_str!("../scenarios/brane_decay.json"),
            "em_lacuna" => include_str!("../scenarios/em_lacuna.json"),
            "em_decay" => include_str!("../scenarios/em_decay.json"),
            "gen_decay" => include_str!("../scenarios/gen_decay.json"),
            "packet_mirror" => include_str!("../scenarios/packet_mirror.json"),
            "lift_check" => include_str!("../scenarios/lift_check.json"),
            "oracle_halfline" => include_str!("../scenarios/oracle_halfline.json"),
            "oracle_brane" => include_str!("../scenarios/oracle_brane.json"),
            "negative_controls" => include_str!("../scenarios/negative_controls.json"),
            _ => return None,
        };
        Some(Scenario::from_json(text).expect("bundled scenarios are valid"))
    }
}
