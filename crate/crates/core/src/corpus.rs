//! Built-in problem instances, generated for any source dimension `n ≥ 1`.

use thiserror::Error;

use crate::problem::{ProblemFile, ProblemOptions};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CorpusError {
    #[error("unknown example `{0}` (known: {known})", known = NAMES.join(", "))]
    UnknownName(String),
    #[error("example dimension must be at least 1")]
    ZeroDimension,
}

pub const NAMES: [&str; 5] = ["ex1_2", "ex1_4", "heisenberg_embed", "sphere", "hyperplane"];

pub fn describe(name: &str) -> Option<&'static str> {
    Some(match name {
        "ex1_2" => "quadric Im w = |z|^2 into a signature-(n,n) quadric of C^{2n+1}; local embedding, not transversal at 0",
        "ex1_4" => "unit sphere at (0,..,0,1) into a signature-(n+1,1) quadric of C^{n+3} by (Z1^2, Z1 Z2, .., Z1 Z_{n+1}, Z1, 0)",
        "heisenberg_embed" => "linear embedding (z, w) -> (z, 0, w) of a strictly pseudoconvex quadric into a nondegenerate one",
        "sphere" => "identity of the unit sphere at (0,..,0,1)",
        "hyperplane" => "identity of the flat hyperplane Im w = 0",
        _ => return None,
    })
}

/// `−(i/2)·(W − T)`, the real form of `Im w` for the variables `W`, `T`.
fn im_part(w: &str, t: &str) -> String {
    format!("-1/2*i*({w} - {t})")
}

fn hermitian_sum(z: &str, xi: &str, idx: impl IntoIterator<Item = usize>, sign: &str) -> String {
    idx.into_iter().map(|j| format!(" {sign} {z}{j}*{xi}{j}")).collect()
}

pub fn builtin(name: &str, n: usize) -> Result<ProblemFile, CorpusError> {
    if n == 0 {
        return Err(CorpusError::ZeroDimension);
    }
    let w = format!("Z{}", n + 1);
    let tau = format!("XI{}", n + 1);
    let quadric = format!("{}{}", im_part(&w, &tau), hermitian_sum("Z", "XI", 1..=n, "-"));
    let sphere_rho = || format!("{} - 1", (1..=n + 1).map(|j| format!("Z{j}*XI{j}")).collect::<Vec<_>>().join(" + "));
    let top = || Some((0..=n).map(|j| if j == n { "1" } else { "0" }.to_string()).collect());
    let pf = match name {
        "ex1_2" => {
            let nn = 2 * n;
            let mut target = im_part(&format!("ZP{}", nn + 1), &format!("XIP{}", nn + 1));
            for j in 1..=n {
                target += &format!(" + ZP{a}*XIP{a} - ZP{b}*XIP{b}", a = 2 * j - 1, b = 2 * j);
            }
            let bracket = format!("({})", (1..=n).map(|j| format!("Z{j}")).collect::<Vec<_>>().join(" + "));
            let mut map = Vec::new();
            for j in 1..=n {
                map.push(format!("Z{j} + {bracket}*Z{j} + 1/2*i*{w}"));
                map.push(format!("Z{j} - {bracket}*Z{j} - 1/2*i*{w}"));
            }
            map.push(format!("-2*{bracket}*{w}"));
            ProblemFile { n, target_n: nn, source_rho: quadric, target_rho: target, map, base_point: None, options: ProblemOptions::default() }
        }
        "ex1_4" => {
            let nn = n + 2;
            let target = format!(
                "{}{} + ZP{k}*XIP{k}",
                im_part(&format!("ZP{}", nn + 1), &format!("XIP{}", nn + 1)),
                hermitian_sum("ZP", "XIP", 1..=n + 1, "-"),
                k = n + 2
            );
            let mut map = vec!["Z1^2".to_string()];
            map.extend((2..=n + 1).map(|j| format!("Z1*Z{j}")));
            map.push("Z1".into());
            map.push("0".into());
            ProblemFile { n, target_n: nn, source_rho: sphere_rho(), target_rho: target, map, base_point: top(), options: ProblemOptions::default() }
        }
        "heisenberg_embed" => {
            let nn = n + 1;
            let target = format!(
                "{}{} + ZP{k}*XIP{k}",
                im_part(&format!("ZP{}", nn + 1), &format!("XIP{}", nn + 1)),
                hermitian_sum("ZP", "XIP", 1..=n, "-"),
                k = n + 1
            );
            let mut map: Vec<String> = (1..=n).map(|j| format!("Z{j}")).collect();
            map.push("0".into());
            map.push(w.clone());
            ProblemFile { n, target_n: nn, source_rho: quadric, target_rho: target, map, base_point: None, options: ProblemOptions::default() }
        }
        "sphere" => {
            let target = format!("{} - 1", (1..=n + 1).map(|j| format!("ZP{j}*XIP{j}")).collect::<Vec<_>>().join(" + "));
            let map = (1..=n + 1).map(|j| format!("Z{j}")).collect();
            ProblemFile { n, target_n: n, source_rho: sphere_rho(), target_rho: target, map, base_point: top(), options: ProblemOptions::default() }
        }
        "hyperplane" => {
            let target = im_part(&format!("ZP{}", n + 1), &format!("XIP{}", n + 1));
            let map = (1..=n + 1).map(|j| format!("Z{j}")).collect();
            ProblemFile { n, target_n: n, source_rho: im_part(&w, &tau), target_rho: target, map, base_point: None, options: ProblemOptions::default() }
        }
        other => return Err(CorpusError::UnknownName(other.to_string())),
    };
    Ok(pf)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_example_loads() {
        for name in NAMES {
            for n in 1..=3 {
                let pf = builtin(name, n).unwrap();
                pf.load().unwrap_or_else(|e| panic!("{name} n={n}: {e}"));
            }
        }
        assert!(matches!(builtin("nope", 1), Err(CorpusError::UnknownName(_))));
    }

    #[test]
    fn small_instances_match_hand_formulas() {
        let e = builtin("ex1_2", 1).unwrap();
        assert_eq!(e.map, vec!["Z1 + (Z1)*Z1 + 1/2*i*Z2", "Z1 - (Z1)*Z1 - 1/2*i*Z2", "-2*(Z1)*Z2"]);
        let e = builtin("ex1_4", 1).unwrap();
        assert_eq!(e.map, vec!["Z1^2", "Z1*Z2", "Z1", "0"]);
        assert_eq!(e.target_rho, "-1/2*i*(ZP4 - XIP4) - ZP1*XIP1 - ZP2*XIP2 + ZP3*XIP3");
        let e = builtin("heisenberg_embed", 1).unwrap();
        assert_eq!(e.map, vec!["Z1", "0", "Z2"]);
    }
}
