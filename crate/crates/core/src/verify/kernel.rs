use super::{Status, VerificationReport};
use crate::liealg::build_lie_algebra;
use crate::rootdata::build_cartan;
use std::time::Instant;

/// Fixed-point dimension of the Chevalley involution from the split
/// symmetric pair table, per simple factor; None for unknown labels.
pub fn table1_expected(label: &str) -> Option<usize> {
    let mut total = 0;
    for part in label.split(['x', '×']) {
        let part = part.trim();
        if part == "G2-paper" {
            total += 6;
            continue;
        }
        let (kind, n) = part.split_at(1.min(part.len()));
        let n: usize = n.parse().ok()?;
        total += match kind {
            "A" => n * (n + 1) / 2,
            "B" | "C" => n * n,
            "D" => n * (n - 1),
            "E" => match n {
                6 => 36,
                7 => 63,
                8 => 120,
                _ => return None,
            },
            "F" if n == 4 => 24,
            "G" if n == 2 => 6,
            _ => return None,
        };
    }
    Some(total)
}

pub fn suite_jacobi(label: &str) -> VerificationReport {
    let t = Instant::now();
    let mut rep = VerificationReport::new("jacobi", label);
    match build_cartan(label).map_err(|e| e.to_string()).and_then(|c| build_lie_algebra(&c).map_err(|e| e.to_string())) {
        Ok(g) => {
            rep = rep.param("dim", g.dim());
            match g.verify_jacobi() {
                Ok(()) => rep.push("all basis triples", Status::Pass, "0"),
                Err(e) => rep.push("all basis triples", Status::Fail, e.to_string()),
            }
        }
        Err(e) => rep.push("build", Status::Fail, e),
    }
    rep.finish(t)
}

pub fn suite_table1(label: &str) -> VerificationReport {
    let t = Instant::now();
    let mut rep = VerificationReport::new("table1", label);
    let got = build_cartan(label).ok().and_then(|c| build_lie_algebra(&c).ok()).map(|g| g.fixed_point_dimension());
    match (got, table1_expected(label)) {
        (Some(g), Some(e)) => {
            rep = rep.param("expected", e).param("computed", g);
            rep.push("fixed_point_dimension", Status::of(g == e), if g == e { "0".to_string() } else { format!("{g} != {e}") });
        }
        (g, e) => rep.push("fixed_point_dimension", Status::Fail, format!("computed {g:?}, table {e:?}")),
    }
    rep.finish(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_values() {
        assert_eq!(table1_expected("A3"), Some(6));
        assert_eq!(table1_expected("B2"), Some(4));
        assert_eq!(table1_expected("G2-paper"), Some(6));
        assert_eq!(table1_expected("A1xA1"), Some(2));
        assert_eq!(table1_expected("Q7"), None);
        assert_eq!(suite_table1("D4").status, Status::Pass);
        assert_eq!(suite_jacobi("B2").status, Status::Pass);
    }
}
