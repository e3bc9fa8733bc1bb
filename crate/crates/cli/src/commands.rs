use std::fmt::Write as _;

use defcol_core::arith::binom;
use defcol_core::{
    complete, decompose, exact_defective_colouring, grid, max_cut_partition, mono_edge_probability,
    probe_bad_vertex, probe_mono_edge, random_bounded_degree, random_linear, run_engine, Colouring,
    DefectReport, EndgameKind, EngineConfig, EngineRun, Mode, ProbeStats,
};
use serde_json::{json, Value};

use crate::format::{parse_assignment, write_assignment, write_instance};
use crate::{
    digest, load_instance, read_input, ColorArgs, ExactArgs, Failure, Family, GenerateArgs,
    MaxcutArgs, ProbeArgs, ProbeKind, Report, SunflowerArgs, VerifyArgs,
};

/// Width of the acceptance band for Monte Carlo probes, in standard errors.
pub const PROBE_SIGMAS: f64 = 4.0;

/// Largest complete hypergraph `generate` will list.
const COMPLETE_EDGE_LIMIT: u128 = 10_000_000;

fn required(value: Option<usize>, flag: &str, family: &str) -> Result<usize, Failure> {
    value.ok_or_else(|| Failure::Usage(format!("--{flag} is required for --family {family}")))
}

pub(crate) fn generate(a: &GenerateArgs) -> Result<Report, Failure> {
    let h = match a.family {
        Family::Complete => {
            let u = required(a.u, "u", "complete")?;
            if binom(a.n as u64, u as u64) > COMPLETE_EDGE_LIMIT {
                return Err(Failure::Usage(format!(
                    "complete({}, {u}) has more than {COMPLETE_EDGE_LIMIT} edges",
                    a.n
                )));
            }
            complete(a.n, u)?
        }
        Family::Grid => grid(a.n, required(a.r, "r", "grid")?)?.hypergraph,
        Family::Random | Family::RandomLinear => {
            let name = if matches!(a.family, Family::Random) {
                "random"
            } else {
                "random-linear"
            };
            let u = required(a.u, "u", name)?;
            let m = required(a.m, "m", name)?;
            let cap = a.cap.unwrap_or(usize::MAX);
            if matches!(a.family, Family::Random) {
                random_bounded_degree(a.n, u, cap, m, a.seed)?
            } else {
                random_linear(a.n, u, cap, m, a.seed)?
            }
        }
    };
    let text = write_instance(&h);
    let outcome = json!({
        "n": h.n(),
        "m": h.edge_count(),
        "u": h.uniformity(),
        "max_degree": h.max_degree(),
    });
    let stdout = match &a.output {
        Some(path) => {
            std::fs::write(path, &text)
                .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            format!(
                "# wrote {} ({} {} {})\n",
                path.display(),
                h.n(),
                h.edge_count(),
                h.uniformity()
            )
        }
        None => text.clone(),
    };
    Ok(Report::new(
        stdout,
        outcome,
        true,
        Some(digest(text.as_bytes())),
    ))
}

fn join(vs: &[usize]) -> String {
    vs.iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

pub(crate) fn sunflower(a: &SunflowerArgs) -> Result<Report, Failure> {
    let (h, dig) = load_instance(&a.instance)?;
    let dec = decompose(&h, a.petals)?;
    let disjoint = {
        let mut seen = vec![false; h.edge_count()];
        dec.sunflower_edges
            .iter()
            .flatten()
            .chain(&dec.leftover)
            .all(|&e| !std::mem::replace(&mut seen[e], true))
    };
    let valid = disjoint && dec.leftover.len() as u128 <= dec.leftover_bound();
    let mut s = String::new();
    let _ = writeln!(s, "# petals {}", a.petals);
    let _ = writeln!(s, "# sunflowers {}", dec.sunflowers.len());
    let _ = writeln!(
        s,
        "# leftover {} bound {} stated_bound {}",
        dec.leftover.len(),
        dec.leftover_bound(),
        dec.stated_bound()
    );
    let mut flowers = Vec::new();
    for (i, (sf, ids)) in dec.sunflowers.iter().zip(&dec.sunflower_edges).enumerate() {
        let petals: Vec<String> = sf.petals.iter().map(|p| format!("[{}]", join(p))).collect();
        let _ = writeln!(
            s,
            "sunflower {i} core [{}] petals {} edges {}",
            join(&sf.core),
            petals.join(" "),
            join(ids)
        );
        flowers.push(json!({
            "core": sf.core.as_slice(),
            "petals": sf.petals.iter().map(|p| p.as_slice()).collect::<Vec<_>>(),
            "edges": ids,
        }));
    }
    let _ = writeln!(s, "leftover {}", join(&dec.leftover));
    let outcome = json!({
        "sunflowers": flowers,
        "leftover": dec.leftover,
        "leftover_bound": dec.leftover_bound().to_string(),
        "stated_bound": dec.stated_bound().to_string(),
        "valid": valid,
    });
    Ok(Report::new(s, outcome, valid, Some(dig)))
}

pub(crate) fn maxcut(a: &MaxcutArgs) -> Result<Report, Failure> {
    let (h, dig) = load_instance(&a.instance)?;
    let cut = max_cut_partition(&h, a.parts, a.seed)?;
    let failing: Vec<usize> = (0..h.n())
        .filter(|&x| !cut.partition.satisfies_guarantee(&h, x))
        .collect();
    let valid = failing.is_empty() && cut.moves <= cut.initial_objective;
    let mut s = String::new();
    let _ = writeln!(s, "# parts {}", a.parts);
    let _ = writeln!(s, "# moves {}", cut.moves);
    let _ = writeln!(s, "# initial_objective {}", cut.initial_objective);
    let _ = writeln!(s, "# final_objective {}", cut.final_objective);
    let _ = writeln!(s, "# guarantee {}", if valid { "pass" } else { "fail" });
    for (v, p) in cut.partition.parts().iter().enumerate() {
        let _ = writeln!(s, "{v} {p}");
    }
    let outcome = json!({
        "moves": cut.moves,
        "initial_objective": cut.initial_objective,
        "final_objective": cut.final_objective,
        "failing": failing,
        "parts": cut.partition.parts(),
    });
    Ok(Report::new(s, outcome, valid, Some(dig)))
}

fn report_json(rep: &DefectReport) -> Value {
    json!({
        "defective": rep.is_defective(),
        "max_mono_degree": rep.max_mono_degree,
        "violating": rep.violating,
        "colours_used": rep.colours_used,
        "proper": rep.proper,
    })
}

fn report_lines(s: &mut String, rep: &DefectReport) {
    let _ = writeln!(
        s,
        "# verify {} defect {} max_mono_degree {} colours_used {} proper {}",
        if rep.is_defective() { "pass" } else { "fail" },
        rep.defect,
        rep.max_mono_degree,
        rep.colours_used,
        rep.proper
    );
    let _ = writeln!(s, "# violating [{}]", join(&rep.violating));
}

fn endgame_name(kind: EndgameKind) -> &'static str {
    match kind {
        EndgameKind::None => "none",
        EndgameKind::SingleColour => "single-colour",
        EndgameKind::GreedyProper => "greedy-proper",
    }
}

fn run_json(run: &EngineRun) -> Value {
    let traces: Vec<Value> = run
        .traces
        .iter()
        .map(|t| {
            json!({
                "round": t.round,
                "palette": t.palette,
                "degree_bound": t.degree_bound,
                "threshold": t.threshold,
                "resamples": t.resamples,
                "residual": t.residual,
                "attempts": t.attempts,
                "success": t.success,
            })
        })
        .collect();
    json!({
        "colours_used": run.colouring.colours_used(),
        "palette_total": run.colouring.palette_total(),
        "palettes": run.colouring.palettes(),
        "rounds": traces,
        "endgame": {
            "kind": endgame_name(run.endgame.kind),
            "vertices": run.endgame.vertices,
            "palette": run.endgame.palette,
        },
    })
}

pub(crate) fn color(a: &ColorArgs) -> Result<Report, Failure> {
    let (h, dig) = load_instance(&a.instance)?;
    let mode = Mode::from_name(&a.mode)
        .ok_or_else(|| Failure::Usage(format!("unknown mode {}", a.mode)))?;
    if a.budget == Some(0) {
        return Err(Failure::Usage("--budget must be at least 1".into()));
    }
    let mut config = EngineConfig::new(mode, a.defect, a.seed);
    config.budget = a.budget;
    config.terrible_threshold = a.threshold;
    let run = run_engine(&h, &config)?;
    // never report success without an independent check
    let rep = defcol_core::verify(&h, &run.colouring, a.defect)?;
    let mut s = String::new();
    let _ = writeln!(s, "# mode {}", mode.name());
    let _ = writeln!(s, "# defect {}", a.defect);
    let _ = writeln!(s, "# colours_used {}", run.colouring.colours_used());
    let _ = writeln!(s, "# palette_total {}", run.colouring.palette_total());
    for t in &run.traces {
        let _ = writeln!(
            s,
            "# round {} palette {} degree_bound {} threshold {} resamples {} residual {} attempts {} success {}",
            t.round, t.palette, t.degree_bound, t.threshold, t.resamples, t.residual, t.attempts, t.success
        );
    }
    let _ = writeln!(
        s,
        "# endgame {} vertices {} palette {}",
        endgame_name(run.endgame.kind),
        run.endgame.vertices,
        run.endgame.palette
    );
    report_lines(&mut s, &rep);
    s.push_str(&write_assignment(&run.colouring));
    let mut outcome = run_json(&run);
    outcome["mode"] = json!(mode.name());
    outcome["verify"] = report_json(&rep);
    outcome["assignment"] = json!(run.colouring.assignment());
    Ok(Report::new(s, outcome, rep.is_defective(), Some(dig)))
}

pub(crate) fn verify(a: &VerifyArgs) -> Result<Report, Failure> {
    let (h, dig) = load_instance(&a.instance)?;
    let bytes = read_input(&a.assignment)?;
    let phi: Colouring = parse_assignment(&String::from_utf8_lossy(&bytes), h.n())
        .map_err(|e| Failure::Usage(format!("{}: {e}", a.assignment.display())))?;
    let rep = defcol_core::verify(&h, &phi, a.defect)?;
    let mut s = String::new();
    report_lines(&mut s, &rep);
    let mut outcome = report_json(&rep);
    outcome["assignment_digest"] = json!(digest(&bytes));
    Ok(Report::new(s, outcome, rep.is_defective(), Some(dig)))
}

pub(crate) fn exact(a: &ExactArgs) -> Result<Report, Failure> {
    let (h, dig) = load_instance(&a.instance)?;
    let found = exact_defective_colouring(&h, a.defect, a.limit, a.force)?;
    let mut s = String::new();
    let _ = writeln!(s, "# defect {} limit {}", a.defect, a.limit);
    let outcome = match &found {
        Some((k, phi)) => {
            let _ = writeln!(s, "# chromatic {k}");
            s.push_str(&write_assignment(phi));
            json!({ "chromatic": k, "assignment": phi.assignment() })
        }
        None => {
            let _ = writeln!(s, "# chromatic none");
            json!({ "chromatic": null })
        }
    };
    Ok(Report::new(s, outcome, true, Some(dig)))
}

fn stats_json(st: &ProbeStats) -> Value {
    json!({
        "trials": st.trials,
        "events": st.events,
        "estimate": st.estimate,
        "std_error": st.std_error,
    })
}

pub(crate) fn probe(a: &ProbeArgs) -> Result<Report, Failure> {
    let (h, dig) = load_instance(&a.instance)?;
    let mut s = String::new();
    let (outcome, valid) = match a.what {
        ProbeKind::MonoEdge => {
            let st = probe_mono_edge(&h, a.k, a.trials, a.seed)?;
            let target = mono_edge_probability(a.k, h.rank());
            let ok = st.within(target, PROBE_SIGMAS);
            let _ = writeln!(
                s,
                "# mono-edge k {} trials {} events {} estimate {} std_error {} target {} within_band {}",
                a.k, st.trials, st.events, st.estimate, st.std_error, target, ok
            );
            let mut v = stats_json(&st);
            v["target"] = json!(target);
            v["within_band"] = json!(ok);
            (v, ok)
        }
        ProbeKind::BadVertex => {
            let p = probe_bad_vertex(&h, a.k, a.defect, a.vertex, a.trials, a.seed)?;
            let ok = p.respects_ceiling(PROBE_SIGMAS);
            let _ = writeln!(
                s,
                "# bad-vertex k {} defect {} vertex {} trials {} events {} estimate {} std_error {} markov_ceiling {} within_band {}",
                a.k, a.defect, a.vertex, p.stats.trials, p.stats.events, p.stats.estimate, p.stats.std_error, p.markov_ceiling, ok
            );
            let mut v = stats_json(&p.stats);
            v["markov_ceiling"] = json!(p.markov_ceiling);
            v["within_band"] = json!(ok);
            (v, ok)
        }
    };
    Ok(Report::new(s, outcome, valid, Some(dig)))
}
