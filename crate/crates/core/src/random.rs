//! Seeded generators: random polynomials, perturbed quadrics and linear
//! maps between hyperquadrics.
//!
//! A hyperquadric is `Im w = Σ ε_j |z_j|²` with `ε_j ∈ {1, −1, 0}`. A linear
//! map `(z, w) ↦ (A z + b w, λ w)` sends the source quadric into the target
//! one exactly when `A* E' A = λ E`, `A* E' b = 0`, `b* E' b = 0` and `λ` is
//! real; then `a = λ`.

use std::sync::Arc;

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{GaussRat, Monomial, Scalar, VarUniverse};
use crate::problem::{ProblemFile, ProblemOptions};
use crate::Poly;

/// A small Gaussian rational `(p + q i)/d` with `|p|, |q| ≤ max`, `d ∈ 1..=3`.
pub fn random_scalar<R: Rng>(rng: &mut R, max: i64) -> GaussRat {
    let d = rng.gen_range(1..=3);
    let re = rng.gen_range(-max..=max);
    let im = if rng.gen_bool(0.5) { rng.gen_range(-max..=max) } else { 0 };
    GaussRat::from_parts(re, d, im, d)
}

/// Up to `terms` random terms of total degree `≤ max_deg`.
pub fn random_poly<R: Rng>(rng: &mut R, u: &Arc<VarUniverse>, terms: usize, max_deg: u32, max_coeff: i64) -> Poly {
    let mut out = Poly::zero(u);
    for _ in 0..terms {
        let deg = rng.gen_range(0..=max_deg);
        let mono = random_monomial(rng, u.len(), deg);
        let mut c = random_scalar(rng, max_coeff);
        if c.is_zero() {
            c = GaussRat::one();
        }
        out = &out + &Poly::monomial(u, mono, c);
    }
    out
}

fn random_monomial<R: Rng>(rng: &mut R, nvars: usize, deg: u32) -> Monomial {
    let mut e = vec![0u16; nvars];
    for _ in 0..deg {
        e[rng.gen_range(0..nvars)] += 1;
    }
    Monomial::new(&e)
}

/// `−(i/2)(w − τ) − Σ ε_j z_j χ_j` in the given universe; `w` is the last
/// Z-variable.
pub fn quadric(u: &Arc<VarUniverse>, eps: &[i64]) -> Poly {
    let m = u.z_count();
    assert_eq!(eps.len() + 1, m);
    let half_i = GaussRat::from_parts(0, 1, -1, 2);
    let mut rho = (&Poly::var(u, m - 1) - &Poly::var(u, u.xi(m - 1))).scale(&half_i);
    for (j, &e) in eps.iter().enumerate() {
        if e != 0 {
            let t = &Poly::var(u, j) * &Poly::var(u, u.xi(j));
            rho = &rho - &t.scale(&GaussRat::from_int(e));
        }
    }
    rho
}

/// A quadric plus `f + bar f` with `f` of degree 2..=`max_deg`.
pub fn perturbed_quadric<R: Rng>(rng: &mut R, n: usize, max_deg: u32) -> Poly {
    let u = VarUniverse::source(n + 1);
    let eps: Vec<i64> = (0..n).map(|_| if rng.gen_bool(0.7) { 1 } else { -1 }).collect();
    let mut f = Poly::zero(&u);
    let terms = rng.gen_range(1..=4);
    for _ in 0..terms {
        let deg = rng.gen_range(2..=max_deg);
        let mono = random_monomial(rng, u.len(), deg);
        f = &f + &Poly::monomial(&u, mono, random_scalar(rng, 2));
    }
    &quadric(&u, &eps) + &(&f + &f.bar().expect("symmetric universe"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SweepConfig {
    pub max_n: usize,
    pub max_target_n: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig { max_n: 3, max_target_n: 6 }
    }
}

/// Signed square roots available for `λ`: `λ = ±s²`.
const SCALES: [(i64, i64); 3] = [(1, 1), (2, 1), (1, 2)];

/// One random quadric-to-quadric linear map problem.
pub fn random_quadric_map<R: Rng>(rng: &mut R, cfg: SweepConfig) -> ProblemFile {
    loop {
        if let Some(pf) = try_quadric_map(rng, cfg) {
            return pf;
        }
    }
}

fn try_quadric_map<R: Rng>(rng: &mut R, cfg: SweepConfig) -> Option<ProblemFile> {
    let n = rng.gen_range(1..=cfg.max_n);
    let nn = rng.gen_range(n.max(1)..=cfg.max_target_n.max(n));
    let eps: Vec<i64> = (0..n).map(|_| if rng.gen_bool(0.75) { 1 } else { -1 }).collect();
    let target_eps: Vec<i64> = (0..nn)
        .map(|_| {
            let x: f64 = rng.gen();
            if x < 0.6 {
                1
            } else if x < 0.85 {
                -1
            } else {
                0
            }
        })
        .collect();
    let (scale_num, scale_den) = *SCALES.choose(rng).unwrap();
    let lambda_sign: i64 = match rng.gen_range(0..6) {
        0 => 0,
        1 => -1,
        _ => 1,
    };
    let s = GaussRat::from_parts(scale_num, scale_den, 0, 1);

    // slots still free in the target
    let mut free: Vec<usize> = (0..nn).collect();
    free.shuffle(rng);
    let take = |free: &mut Vec<usize>, sign: i64| -> Option<usize> {
        let pos = free.iter().position(|&k| target_eps[k] == sign)?;
        Some(free.remove(pos))
    };

    let mut cols: Vec<Vec<GaussRat>> = Vec::new();
    for &e in &eps {
        let mut col = vec![GaussRat::zero(); nn];
        let want = lambda_sign * e;
        if want == 0 {
            // isotropic column: a (+,−) pair, a null slot, or nothing
            match rng.gen_range(0..3) {
                0 => {
                    let (k, l) = (take(&mut free, 1), take(&mut free, -1));
                    match (k, l) {
                        (Some(k), Some(l)) => {
                            col[k] = s.clone();
                            col[l] = s.clone();
                        }
                        (k, l) => free.extend(k.into_iter().chain(l)),
                    }
                }
                1 => {
                    if let Some(k) = take(&mut free, 0) {
                        col[k] = s.clone();
                    }
                }
                _ => {}
            }
        } else {
            let k = take(&mut free, want)?;
            if rng.gen_bool(0.3) {
                if let Some(l) = take(&mut free, -want) {
                    let (a, b) = boost(rng);
                    col[k] = a.mul_ref(&s);
                    col[l] = b.mul_ref(&s);
                } else {
                    col[k] = s.clone();
                }
            } else {
                col[k] = s.clone();
            }
        }
        cols.push(col);
    }
    let mut b = vec![GaussRat::zero(); nn];
    match rng.gen_range(0..3) {
        0 => {
            if let Some(k) = take(&mut free, 0) {
                b[k] = random_scalar(rng, 2);
            }
        }
        1 => {
            if let (Some(k), Some(l)) = (take(&mut free, 1), take(&mut free, -1)) {
                let c = random_scalar(rng, 2);
                b[k] = c.clone();
                b[l] = c;
            }
        }
        _ => {}
    }
    cols.push(b);
    for _ in 0..rng.gen_range(0..4) {
        apply_random_isometry(rng, &target_eps, &mut cols);
    }
    let lambda = GaussRat::from_int(lambda_sign).mul_ref(&s).mul_ref(&s);
    Some(build_problem(n, &eps, &target_eps, &cols, &lambda))
}

/// `count` instances drawn from a ChaCha stream seeded with `seed`.
pub fn quadric_sweep(seed: u64, count: usize, cfg: SweepConfig) -> Vec<ProblemFile> {
    quadric_stream(seed, cfg).take(count).collect()
}

/// Endless version of [`quadric_sweep`]; its prefixes agree with it.
pub fn quadric_stream(seed: u64, cfg: SweepConfig) -> impl Iterator<Item = ProblemFile> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    std::iter::repeat_with(move || random_quadric_map(&mut rng, cfg))
}

/// `(a, b)` with `a² − b² = 1`.
fn boost<R: Rng>(rng: &mut R) -> (GaussRat, GaussRat) {
    let t = rng.gen_range(2..=4);
    (GaussRat::from_parts(t * t + 1, 2 * t, 0, 1), GaussRat::from_parts(t * t - 1, 2 * t, 0, 1))
}

/// Applies one random `E'`-isometry to every column.
fn apply_random_isometry<R: Rng>(rng: &mut R, eps: &[i64], cols: &mut [Vec<GaussRat>]) {
    let nn = eps.len();
    let k = rng.gen_range(0..nn);
    let l = rng.gen_range(0..nn);
    match rng.gen_range(0..4) {
        0 => {
            let phase = [GaussRat::one(), GaussRat::from_int(-1), GaussRat::i(), GaussRat::i().neg_ref()]
                .choose(rng)
                .unwrap()
                .clone();
            for c in cols.iter_mut() {
                c[k] = c[k].mul_ref(&phase);
            }
        }
        1 if k != l && eps[k] == eps[l] && eps[k] != 0 => {
            // rotation by a Pythagorean angle
            let t = rng.gen_range(1..=3);
            let (co, si) = (GaussRat::from_parts(1 - t * t, 1 + t * t, 0, 1), GaussRat::from_parts(2 * t, 1 + t * t, 0, 1));
            for c in cols.iter_mut() {
                let (x, y) = (c[k].clone(), c[l].clone());
                c[k] = co.mul_ref(&x).sub_ref(&si.mul_ref(&y));
                c[l] = si.mul_ref(&x).add_ref(&co.mul_ref(&y));
            }
        }
        2 if eps[k] * eps[l] == -1 => {
            let (a, b) = boost(rng);
            for c in cols.iter_mut() {
                let (x, y) = (c[k].clone(), c[l].clone());
                c[k] = a.mul_ref(&x).add_ref(&b.mul_ref(&y));
                c[l] = b.mul_ref(&x).add_ref(&a.mul_ref(&y));
            }
        }
        3 if eps[k] == 0 && k != l => {
            // shear into a null slot leaves every Hermitian product unchanged
            let f = random_scalar(rng, 2);
            for c in cols.iter_mut() {
                c[k] = c[k].add_ref(&f.mul_ref(&c[l]));
            }
        }
        _ => {}
    }
}

fn build_problem(n: usize, eps: &[i64], target_eps: &[i64], cols: &[Vec<GaussRat>], lambda: &GaussRat) -> ProblemFile {
    let su = VarUniverse::source(n + 1);
    let tu = VarUniverse::target(target_eps.len() + 1);
    let nn = target_eps.len();
    let mut map: Vec<String> = (0..nn)
        .map(|k| {
            let mut p = Poly::zero(&su);
            for (j, col) in cols.iter().enumerate() {
                if !col[k].is_zero() {
                    p = &p + &Poly::var(&su, j).scale(&col[k]);
                }
            }
            p.to_string()
        })
        .collect();
    map.push(Poly::var(&su, n).scale(lambda).to_string());
    ProblemFile {
        n,
        target_n: nn,
        source_rho: quadric(&su, eps).to_string(),
        target_rho: quadric(&tu, target_eps).to_string(),
        map,
        base_point: None,
        options: ProblemOptions::default(),
    }
}

/// A constraint `2N − r  op  c_n·n + c` on instances.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Regime {
    pub op: RegimeOp,
    pub coeff_n: i64,
    pub constant: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RegimeOp {
    Le,
    Eq,
    Ge,
}

impl Regime {
    /// Parses `2N-r<=2n-2`, `2N-r=2n-1`, `2N-r>=n` and the like; `any` accepts
    /// everything.
    pub fn parse(text: &str) -> Result<Option<Regime>, String> {
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if t == "any" {
            return Ok(None);
        }
        let rest = t
            .strip_prefix("2N-r")
            .ok_or_else(|| format!("regime must start with `2N-r`, got `{text}`"))?;
        let (op, rhs) = if let Some(r) = rest.strip_prefix("<=") {
            (RegimeOp::Le, r)
        } else if let Some(r) = rest.strip_prefix(">=") {
            (RegimeOp::Ge, r)
        } else if let Some(r) = rest.strip_prefix("==").or_else(|| rest.strip_prefix('=')) {
            (RegimeOp::Eq, r)
        } else {
            return Err(format!("expected <=, = or >= after `2N-r` in `{text}`"));
        };
        let (mut coeff_n, mut constant) = (0i64, 0i64);
        let mut chunk = String::new();
        let mut flush = |chunk: &str| -> Result<(), String> {
            if chunk.is_empty() {
                return Ok(());
            }
            let (sign, body) = match chunk.as_bytes()[0] {
                b'-' => (-1, &chunk[1..]),
                b'+' => (1, &chunk[1..]),
                _ => (1, chunk),
            };
            if let Some(c) = body.strip_suffix('n') {
                let c = if c.is_empty() { 1 } else { c.parse::<i64>().map_err(|e| e.to_string())? };
                coeff_n += sign * c;
            } else {
                constant += sign * body.parse::<i64>().map_err(|_| format!("bad term `{chunk}` in `{text}`"))?;
            }
            Ok(())
        };
        for ch in rhs.chars() {
            if (ch == '+' || ch == '-') && !chunk.is_empty() {
                flush(&chunk)?;
                chunk.clear();
            }
            chunk.push(ch);
        }
        flush(&chunk)?;
        Ok(Some(Regime { op, coeff_n, constant }))
    }

    pub fn admits(&self, gap: i64, n: usize) -> bool {
        let bound = self.coeff_n * n as i64 + self.constant;
        match self.op {
            RegimeOp::Le => gap <= bound,
            RegimeOp::Eq => gap == bound,
            RegimeOp::Ge => gap >= bound,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadric_maps_preserve() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..30 {
            let pf = random_quadric_map(&mut rng, SweepConfig::default());
            let p = pf.load().unwrap();
            crate::transversality::compute_a(&p.source, &p.target, &p.map).unwrap();
        }
    }

    #[test]
    fn regimes() {
        let r = Regime::parse("2N-r = 2n-1").unwrap().unwrap();
        assert_eq!(r, Regime { op: RegimeOp::Eq, coeff_n: 2, constant: -1 });
        assert!(r.admits(3, 2));
        assert_eq!(Regime::parse("2N-r<=n+1").unwrap().unwrap(), Regime { op: RegimeOp::Le, coeff_n: 1, constant: 1 });
        assert_eq!(Regime::parse("any").unwrap(), None);
        assert!(Regime::parse("N<3").is_err());
    }

    #[test]
    fn perturbed_quadrics_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let rho = perturbed_quadric(&mut rng, 2, 4);
            crate::geometry::validate_hypersurface(&rho, 2).unwrap();
        }
    }
}
