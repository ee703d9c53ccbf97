//! The ten acceptance criteria, each reported as one PASS/FAIL line.

#[path = "../../core/tests/common/type_a.rs"]
mod type_a;

use serde_json::Value;
use std::io::Write;
use std::process::{Child, Command, Stdio};
use std::time::Instant;
use tyang_core::grobner::CellVerdict;
use tyang_core::rootdata::build_cartan;
use tyang_core::verify::*;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn clean(rep: &VerificationReport) -> Outcome {
    let bad: Vec<String> = rep
        .records
        .iter()
        .filter(|r| r.status != Status::Pass)
        .take(3)
        .map(|r| format!("{} [{}]: {:?} {}", rep.suite, rep.cartan_type, r.status, r.residual))
        .collect();
    let bad_cells = rep.cells.iter().filter(|c| c.verdict != CellVerdict::Pass).count();
    if rep.status == Status::Pass && bad.is_empty() && bad_cells == 0 {
        Ok(format!("{} [{}] {} checks", rep.suite, rep.cartan_type, rep.summary.pass))
    } else {
        Err(format!("{} [{}] {:?}: {} bad cells; {}", rep.suite, rep.cartan_type, rep.status, bad_cells, bad.join("; ")))
    }
}

fn all_clean(reps: impl IntoIterator<Item = VerificationReport>) -> Outcome {
    let mut total = 0;
    for r in reps {
        clean(&r)?;
        if r.records.is_empty() && r.cells.is_empty() {
            return Err(format!("{} [{}] checked nothing", r.suite, r.cartan_type));
        }
        total += r.summary.pass;
    }
    Ok(format!("{total} checks"))
}

fn cartan(l: &str) -> tyang_core::rootdata::CartanData {
    build_cartan(l).unwrap()
}

fn c1_lie_kernel() -> Outcome {
    let mut n = all_clean(["A1", "A2", "A3", "B2", "D4", "G2"].map(suite_jacobi))?;
    for l in ["A1", "A2", "A3", "A4"] {
        type_a::check_type_a(l)?;
    }
    n.push_str(", type A matrix units A1-A4");
    Ok(n)
}

fn c2_table1() -> Outcome {
    let types = ["A1", "A2", "A3", "A4", "B2", "B3", "C3", "D4", "G2", "G2-paper", "F4", "E6"];
    for l in types {
        let got = suite_table1(l).params.get("computed").cloned();
        let want = table1_expected(l).map(Value::from);
        if got.is_none() || got != want {
            return Err(format!("{l}: computed {got:?}, expected {want:?}"));
        }
    }
    for (l, d) in [("A1", 1), ("A2", 3), ("A3", 6), ("A4", 10), ("B2", 4), ("G2", 6)] {
        if table1_expected(l) != Some(d) {
            return Err(format!("{l}: table value"));
        }
    }
    all_clean(types.map(suite_table1))
}

fn c3_classical() -> Outcome {
    all_clean(["A3", "B2", "G2-paper"].map(|l| suite_classical_realization(&cartan(l), 2)))
}

fn c4_limit() -> Outcome {
    all_clean(["A1", "A2", "A3", "B2", "G2-paper"].map(|l| suite_yangian_classical_limit(&cartan(l), 2)))
}

fn c5_equivalences() -> Outcome {
    all_clean(["A1", "A2", "A3", "B2", "G2-paper"].map(|l| suite_equivalences(&cartan(l), 3)))
}

fn c6_genfun() -> Outcome {
    all_clean(["A1", "A1xA1", "A2", "B2", "G2-paper"].map(|l| suite_genfun_match(&cartan(l), 3)))
}

fn c7_degeneration() -> Outcome {
    let types = ["A1", "A1xA1", "A2", "A3", "B2", "B3", "C3", "D4", "G2", "G2-paper"];
    all_clean(types.map(|l| suite_degeneration(&cartan(l), DegenerationBounds { r_max: 4, k_max: 2, loop_bound: None })))
}

fn c8_flatness() -> Outcome {
    let cells = [("A1", 3, 3), ("A1xA1", 2, 3), ("A2", 2, 3), ("B2", 2, 4), ("G2-paper", 2, 5)];
    let mut reps = Vec::new();
    for (l, n, len) in cells {
        let c = cartan(l);
        let rep = flatness_certificate(&c, default_relation_set(&c), FlatnessConfig { n_max: n, l_max: len, slack: 2, slack_cap: 4 });
        let want = (n as usize + 1) * (len + 1);
        if rep.cells.len() != want {
            return Err(format!("{l}: {} cells, expected {want}", rep.cells.len()));
        }
        reps.push(rep);
    }
    all_clean(reps)
}

fn c9_reduced() -> Outcome {
    let cfg = ReducedConfig { index_bound: 1, slack: 2, slack_cap: 4 };
    let reps = ["A2", "B2"].map(|l| suite_reduced_presentation(&cartan(l), cfg));
    for (rep, fwd, back) in [(&reps[0], "forward ty4", "backward f_serre1"), (&reps[1], "forward ty6", "backward f_serre2")] {
        for p in [fwd, back] {
            if !rep.records.iter().any(|r| r.key.starts_with(p)) {
                return Err(format!("{}: no '{p}' records", rep.cartan_type));
            }
        }
    }
    all_clean(reps)
}

fn spawn_all() -> Child {
    Command::new(env!("CARGO_BIN_EXE_tyang"))
        .args(["all", "--types", "A1,A2,B2,G2-paper", "--K", "2", "--format", "json"])
        .stdout(Stdio::piped())
        .stderr(Stdio::null())
        .spawn()
        .expect("binary runs")
}

fn c10_determinism(runs: [Child; 2]) -> Outcome {
    let mut payloads = Vec::new();
    for child in runs {
        let out = child.wait_with_output().map_err(|e| e.to_string())?;
        if out.status.code() != Some(0) {
            return Err(format!("`all` exited with {:?}", out.status.code()));
        }
        let doc: Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
        if doc["schema"] != "tyang-report/1" {
            return Err("schema tag".into());
        }
        payloads.push(serde_json::to_vec(&doc["payload"]).unwrap());
    }
    if payloads[0] == payloads[1] {
        Ok(format!("{} payload bytes identical", payloads[0].len()))
    } else {
        Err("payloads differ".into())
    }
}

#[test]
fn acceptance() {
    let runs = [spawn_all(), spawn_all()];
    let criteria: [Criterion; 9] = [
        ("1 Lie kernel", c1_lie_kernel),
        ("2 fixed-point dimensions", c2_table1),
        ("3 classical presentation", c3_classical),
        ("4 classical limit", c4_limit),
        ("5 telescoping equivalences", c5_equivalences),
        ("6 generating functions", c6_genfun),
        ("7 degeneration", c7_degeneration),
        ("8 flatness", c8_flatness),
        ("9 reduced presentation", c9_reduced),
    ];
    let mut failed = Vec::new();
    let mut line = |name: &str, r: Outcome, t: Instant| {
        let text = match &r {
            Ok(m) => format!("criterion {name}: PASS ({m}; {:.1}s)\n", t.elapsed().as_secs_f64()),
            Err(m) => format!("criterion {name}: FAIL ({m})\n"),
        };
        // straight to the handle so the verdicts show without --nocapture
        let mut out = std::io::stdout().lock();
        let _ = out.write_all(text.as_bytes()).and_then(|_| out.flush());
        if r.is_err() {
            failed.push(name.to_string());
        }
    };
    for (name, f) in criteria {
        let t = Instant::now();
        line(name, f(), t);
    }
    let t = Instant::now();
    line("10 determinism", c10_determinism(runs), t);
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
