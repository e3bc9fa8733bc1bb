//! Built-in ensembles run across the colouring modes.

use std::fmt::Write as _;
use std::time::Instant;

use defcol_core::{
    grid, random_bounded_degree, random_linear, run_engine, verify, EngineConfig, Hypergraph, Mode,
};
use serde_json::json;
use sha2::{Digest, Sha256};

use crate::format::write_instance;
use crate::{BenchArgs, Failure, Report, Suite};

struct Instance {
    family: &'static str,
    h: Hypergraph,
    defect: usize,
}

fn instance_seed(seed: u64, i: usize) -> u64 {
    seed ^ (i as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

fn build(suite: Suite, i: usize, seed: u64) -> Result<Instance, Failure> {
    let s = instance_seed(seed, i);
    Ok(match suite {
        Suite::GraphsSmall => {
            let n = 30 + i * 7 % 31;
            let cap = 3 + i % 10;
            Instance {
                family: "random",
                h: random_bounded_degree(n, 2, cap, n * cap / 2, s)?,
                defect: i % 3,
            }
        }
        Suite::Uniform3Small => {
            let n = 40 + i * 5 % 21;
            let cap = 4 + i % 8;
            Instance {
                family: "random",
                h: random_bounded_degree(n, 3, cap, n * cap / 3, s)?,
                defect: i % 3,
            }
        }
        Suite::Linear3Small => {
            let cap = 3 + i % 5;
            Instance {
                family: "random-linear",
                h: random_linear(60, 3, cap, 60 * cap / 3, s)?,
                defect: 0,
            }
        }
        Suite::GridSmall => Instance {
            family: "grid",
            h: grid(3 + i % 3, 2)?.hypergraph,
            defect: i % 2,
        },
    })
}

fn modes(suite: Suite) -> &'static [Mode] {
    match suite {
        Suite::GraphsSmall => &[
            Mode::GraphMaxcut,
            Mode::Adaptive,
            Mode::Theorem,
            Mode::GreedyProper,
        ],
        Suite::Linear3Small => &[
            Mode::NaiveLll,
            Mode::Adaptive,
            Mode::Theorem,
            Mode::GreedyProper,
        ],
        Suite::Uniform3Small | Suite::GridSmall => {
            &[Mode::Adaptive, Mode::Theorem, Mode::GreedyProper]
        }
    }
}

/// `(Δ/(d+1))^{1/r}`, the order of the optimal colour count.
fn reference(delta: usize, d: usize, r: usize) -> f64 {
    (delta as f64 / (d as f64 + 1.0)).powf(1.0 / r as f64)
}

pub(crate) fn bench(a: &BenchArgs) -> Result<Report, Failure> {
    let mut table = String::from(
        "instance\tfamily\tn\tm\tu\tdelta\td\tmode\tcolours\treference\tratio\tvalid\tms\n",
    );
    let mut rows = Vec::new();
    let mut timings = Vec::new();
    let mut hasher = Sha256::new();
    let mut all_valid = true;
    for i in 0..a.instances {
        let inst = build(a.suite, i, a.seed)?;
        hasher.update(write_instance(&inst.h).as_bytes());
        let (h, d) = (&inst.h, inst.defect);
        let delta = h.max_degree();
        let refq = reference(delta, d, h.rank());
        for &mode in modes(a.suite) {
            let start = Instant::now();
            let run = run_engine(h, &EngineConfig::new(mode, d, instance_seed(a.seed, i)))?;
            let ms = start.elapsed().as_secs_f64() * 1e3;
            let colours = run.colouring.colours_used();
            let mut valid = verify(h, &run.colouring, d)?.is_defective();
            if mode == Mode::GraphMaxcut {
                valid &= colours == delta / (d + 1) + 1;
            }
            all_valid &= valid;
            let ratio = (delta >= 1).then(|| colours as f64 / refq);
            let _ = writeln!(
                table,
                "{i}\t{}\t{}\t{}\t{}\t{delta}\t{d}\t{}\t{colours}\t{refq:.4}\t{}\t{valid}\t{ms:.2}",
                inst.family,
                h.n(),
                h.edge_count(),
                h.uniformity(),
                mode.name(),
                ratio.map_or("-".to_string(), |r| format!("{r:.4}")),
            );
            rows.push(json!({
                "instance": i,
                "family": inst.family,
                "n": h.n(),
                "m": h.edge_count(),
                "u": h.uniformity(),
                "delta": delta,
                "defect": d,
                "mode": mode.name(),
                "colours": colours,
                "reference": refq,
                "ratio": ratio,
                "valid": valid,
            }));
            timings.push(ms);
        }
    }
    let digest = format!("sha256:{}", hex::encode(hasher.finalize()));
    let mut report = Report::new(
        table,
        json!({ "rows": rows, "valid": all_valid }),
        all_valid,
        Some(digest),
    );
    report.timings_ms = timings;
    Ok(report)
}
