use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use super::monomial::Monomial;
use super::scalar::{GaussRat, Scalar};
use super::AlgebraError;

/// The variables a polynomial may use: a Z-block followed by a ξ-block.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VarUniverse {
    z_count: usize,
    xi_count: usize,
    names: Vec<String>,
}

impl VarUniverse {
    /// Empty `names` selects the default `Z1.., XI1..` naming.
    pub fn new(z_count: usize, xi_count: usize, names: Vec<String>) -> Result<Self, AlgebraError> {
        let names = if names.is_empty() {
            default_names("Z", "XI", z_count, xi_count)
        } else {
            names
        };
        if names.len() != z_count + xi_count {
            return Err(AlgebraError::BadUniverse(format!(
                "{} names for {} variables",
                names.len(),
                z_count + xi_count
            )));
        }
        for (i, a) in names.iter().enumerate() {
            if names[..i].contains(a) {
                return Err(AlgebraError::BadUniverse(format!("duplicate variable name {a}")));
            }
        }
        Ok(VarUniverse { z_count, xi_count, names })
    }

    /// `Z1..Z{m}, XI1..XI{m}` for a hypersurface in `ℂ^m`.
    pub fn source(m: usize) -> Arc<Self> {
        Arc::new(VarUniverse { z_count: m, xi_count: m, names: default_names("Z", "XI", m, m) })
    }

    /// `ZP1..ZP{m}, XIP1..XIP{m}` for the target space.
    pub fn target(m: usize) -> Arc<Self> {
        Arc::new(VarUniverse { z_count: m, xi_count: m, names: default_names("ZP", "XIP", m, m) })
    }

    pub fn len(&self) -> usize {
        self.z_count + self.xi_count
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn z_count(&self) -> usize {
        self.z_count
    }

    pub fn xi_count(&self) -> usize {
        self.xi_count
    }

    pub fn is_symmetric(&self) -> bool {
        self.z_count == self.xi_count
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Index of `ξ_j` (0-based within the block).
    pub fn xi(&self, j: usize) -> usize {
        self.z_count + j
    }

    pub fn is_z(&self, index: usize) -> bool {
        index < self.z_count
    }

    pub fn z_mask(&self) -> Vec<bool> {
        (0..self.len()).map(|i| i < self.z_count).collect()
    }

    pub fn xi_mask(&self) -> Vec<bool> {
        (0..self.len()).map(|i| i >= self.z_count).collect()
    }
}

fn default_names(z: &str, xi: &str, zc: usize, xc: usize) -> Vec<String> {
    (1..=zc)
        .map(|j| format!("{z}{j}"))
        .chain((1..=xc).map(|j| format!("{xi}{j}")))
        .collect()
}

fn same_universe(a: &Arc<VarUniverse>, b: &Arc<VarUniverse>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Sparse multivariate polynomial with exact coefficients.
///
/// Terms are kept in a `BTreeMap` keyed by the global grevlex order, so the
/// leading term is the last entry. Zero coefficients are never stored.
#[derive(Clone)]
pub struct MPoly<C: Scalar = GaussRat> {
    universe: Arc<VarUniverse>,
    terms: BTreeMap<Monomial, C>,
}

/// Per-variable substitution instruction.
#[derive(Clone, Debug)]
pub enum Subst<C: Scalar = GaussRat> {
    Keep,
    With(MPoly<C>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// Exact ring operation on two polynomials of the same universe.
pub fn poly_arith<C: Scalar>(op: ArithOp, f: &MPoly<C>, g: &MPoly<C>) -> Result<MPoly<C>, AlgebraError> {
    match op {
        ArithOp::Add => f.checked_add(g),
        ArithOp::Sub => f.checked_sub(g),
        ArithOp::Mul => f.checked_mul(g),
    }
}

impl<C: Scalar> PartialEq for MPoly<C> {
    fn eq(&self, other: &Self) -> bool {
        same_universe(&self.universe, &other.universe) && self.terms == other.terms
    }
}

impl<C: Scalar> Eq for MPoly<C> {}

impl<C: Scalar> MPoly<C> {
    pub fn zero(universe: &Arc<VarUniverse>) -> Self {
        MPoly { universe: universe.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(universe: &Arc<VarUniverse>, c: C) -> Self {
        let mut p = Self::zero(universe);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(universe.len()), c);
        }
        p
    }

    pub fn one(universe: &Arc<VarUniverse>) -> Self {
        Self::constant(universe, C::one())
    }

    pub fn var(universe: &Arc<VarUniverse>, index: usize) -> Self {
        assert!(index < universe.len(), "variable index {index} out of range");
        Self::monomial(universe, Monomial::var(universe.len(), index, 1), C::one())
    }

    pub fn monomial(universe: &Arc<VarUniverse>, mono: Monomial, c: C) -> Self {
        assert_eq!(mono.nvars(), universe.len());
        let mut p = Self::zero(universe);
        if !c.is_zero() {
            p.terms.insert(mono, c);
        }
        p
    }

    /// Builds from `(exponents, coefficient)` pairs; like terms are combined.
    pub fn from_terms<I>(universe: &Arc<VarUniverse>, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u16>, C)>,
    {
        let mut p = Self::zero(universe);
        for (e, c) in terms {
            assert_eq!(e.len(), universe.len(), "exponent vector has wrong length");
            p.add_term(Monomial::new(&e), c);
        }
        p
    }

    pub fn universe(&self) -> &Arc<VarUniverse> {
        &self.universe
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn coeff(&self, mono: &Monomial) -> C {
        self.terms.get(mono).cloned().unwrap_or_else(C::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &C)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Option<&C> {
        self.terms.values().next_back()
    }

    pub fn constant_term(&self) -> C {
        self.terms
            .iter()
            .next()
            .filter(|(m, _)| m.is_one())
            .map(|(_, c)| c.clone())
            .unwrap_or_else(C::zero)
    }

    pub fn vanishes_at_origin(&self) -> bool {
        self.constant_term().is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn as_constant(&self) -> Option<C> {
        self.is_constant().then(|| self.constant_term())
    }

    /// A nonzero constant: the units of the polynomial ring.
    pub fn is_unit(&self) -> bool {
        !self.is_zero() && self.is_constant()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, var: usize) -> u16 {
        self.terms.keys().map(|m| m.exp(var)).max().unwrap_or(0)
    }

    pub fn uses_var(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.exp(var) > 0)
    }

    /// True when every term only involves variables flagged in `mask`.
    pub fn only_uses(&self, mask: &[bool]) -> bool {
        self.terms
            .keys()
            .all(|m| m.exps().iter().zip(mask).all(|(&e, &ok)| e == 0 || ok))
    }

    pub fn in_z_only(&self) -> bool {
        self.only_uses(&self.universe.z_mask())
    }

    pub fn in_xi_only(&self) -> bool {
        self.only_uses(&self.universe.xi_mask())
    }

    fn add_term(&mut self, mono: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(mono) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get().add_ref(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check_universe(&self, other: &Self) -> Result<(), AlgebraError> {
        if same_universe(&self.universe, &other.universe) {
            Ok(())
        } else {
            Err(AlgebraError::UniverseMismatch)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_universe(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_universe(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.neg_ref());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_universe(other)?;
        Ok(self.mul_impl(other, None))
    }

    fn mul_impl(&self, other: &Self, max_deg: Option<u32>) -> Self {
        let mut out = Self::zero(&self.universe);
        if self.is_zero() || other.is_zero() {
            return out;
        }
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some(k) = max_deg {
                    // terms are sorted by degree first
                    if ma.degree() + mb.degree() > k {
                        break;
                    }
                }
                out.add_term(ma.mul(mb), ca.mul_ref(cb));
            }
        }
        out
    }

    /// Product with all terms of total degree `> k` discarded.
    pub fn mul_truncated(&self, other: &Self, k: u32) -> Self {
        assert!(same_universe(&self.universe, &other.universe), "universe mismatch");
        self.mul_impl(other, Some(k))
    }

    /// Drops all terms of total degree `> k`.
    pub fn truncate(&self, k: u32) -> Self {
        MPoly {
            universe: self.universe.clone(),
            terms: self.terms.iter().filter(|(m, _)| m.degree() <= k).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// Homogeneous component of degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        MPoly {
            universe: self.universe.clone(),
            terms: self.terms.iter().filter(|(m, _)| m.degree() == d).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().next().map(Monomial::degree)
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(&self.universe);
        }
        MPoly {
            universe: self.universe.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a.mul_ref(c))).collect(),
        }
    }

    pub fn mul_monomial(&self, mono: &Monomial, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(&self.universe);
        }
        MPoly {
            universe: self.universe.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.mul(mono), a.mul_ref(c))).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.universe);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Normalized so the leading coefficient is 1; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) => {
                let inv = lc.inv().expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    /// Formal partial derivative.
    pub fn derivative(&self, var: usize) -> Self {
        assert!(var < self.universe.len(), "variable index {var} out of range");
        let mut out = Self::zero(&self.universe);
        for (m, c) in &self.terms {
            let e = m.exp(var);
            if e == 0 {
                continue;
            }
            let mut dm = m.clone();
            dm.set_exp(var, e - 1);
            out.add_term(dm, c.mul_ref(&C::from_int(i64::from(e))));
        }
        out
    }

    pub fn try_derivative(&self, var: usize) -> Result<Self, AlgebraError> {
        if var >= self.universe.len() {
            return Err(AlgebraError::VariableOutOfRange { index: var, len: self.universe.len() });
        }
        Ok(self.derivative(var))
    }

    /// Value at a point (one scalar per variable).
    pub fn evaluate(&self, point: &[C]) -> C {
        assert_eq!(point.len(), self.universe.len());
        let mut acc = C::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exps()) {
                if e > 0 {
                    t = t.mul_ref(&x.pow(u32::from(e)));
                }
            }
            acc = acc.add_ref(&t);
        }
        acc
    }

    /// Composition: each variable is kept or replaced by a polynomial.
    ///
    /// All replacement polynomials must share one universe; `Keep` is only
    /// allowed when that universe is the polynomial's own.
    pub fn substitute(&self, assignment: &[Subst<C>]) -> Result<Self, AlgebraError> {
        self.substitute_impl(assignment, None)
    }

    /// Like [`MPoly::substitute`] but discards degree `> k` throughout.
    /// Sound when every replacement has zero constant term or the caller only
    /// needs the result modulo degree `> k` in the target variables.
    pub fn substitute_truncated(&self, assignment: &[Subst<C>], k: u32) -> Result<Self, AlgebraError> {
        self.substitute_impl(assignment, Some(k))
    }

    fn substitute_impl(&self, assignment: &[Subst<C>], max_deg: Option<u32>) -> Result<Self, AlgebraError> {
        if assignment.len() != self.universe.len() {
            return Err(AlgebraError::VariableOutOfRange { index: assignment.len(), len: self.universe.len() });
        }
        let mut target: Option<Arc<VarUniverse>> = None;
        for s in assignment {
            if let Subst::With(p) = s {
                match &target {
                    None => target = Some(p.universe.clone()),
                    Some(t) if !same_universe(t, &p.universe) => return Err(AlgebraError::UniverseMismatch),
                    _ => {}
                }
            }
        }
        let target = target.unwrap_or_else(|| self.universe.clone());
        let keeps = assignment.iter().any(|s| matches!(s, Subst::Keep));
        if keeps && !same_universe(&target, &self.universe) {
            return Err(AlgebraError::UniverseMismatch);
        }
        let mul = |a: &Self, b: &Self| match max_deg {
            Some(k) => a.mul_truncated(b, k),
            None => a * b,
        };
        let base: Vec<Self> = assignment
            .iter()
            .enumerate()
            .map(|(i, s)| match s {
                Subst::Keep => Self::var(&target, i),
                Subst::With(p) => match max_deg {
                    Some(k) => p.truncate(k),
                    None => p.clone(),
                },
            })
            .collect();
        let mut powers: Vec<Vec<Self>> = base.iter().map(|b| vec![Self::one(&target), b.clone()]).collect();
        let mut out = Self::zero(&target);
        for (m, c) in &self.terms {
            let mut t = Self::constant(&target, c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let e = usize::from(e);
                while powers[i].len() <= e {
                    let next = mul(powers[i].last().unwrap(), &base[i]);
                    powers[i].push(next);
                }
                t = mul(&t, &powers[i][e]);
                if t.is_zero() {
                    break;
                }
            }
            for (tm, tc) in t.terms {
                out.add_term(tm, tc);
            }
        }
        Ok(out)
    }

    /// Copies the polynomial into another universe, mapping variable `i` to
    /// `index_map[i]`.
    pub fn relabel(&self, target: &Arc<VarUniverse>, index_map: &[usize]) -> Self {
        assert_eq!(index_map.len(), self.universe.len());
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0u16; target.len()];
            for (i, &x) in m.exps().iter().enumerate() {
                if x > 0 {
                    e[index_map[i]] += x;
                }
            }
            out.add_term(Monomial::new(&e), c.clone());
        }
        out
    }

    /// Conjugates every coefficient.
    pub fn conj_coeffs(&self) -> Self {
        MPoly {
            universe: self.universe.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.conj())).collect(),
        }
    }

    /// `f̄(Z, ξ) = conj(f)(ξ, Z)`: conjugate coefficients and swap the blocks.
    pub fn bar(&self) -> Result<Self, AlgebraError> {
        let u = &self.universe;
        if !u.is_symmetric() {
            return Err(AlgebraError::AsymmetricUniverse { z: u.z_count(), xi: u.xi_count() });
        }
        let m = u.z_count();
        let mut out = Self::zero(u);
        for (mono, c) in &self.terms {
            let e = mono.exps();
            let swapped: Vec<u16> = e[m..].iter().chain(&e[..m]).copied().collect();
            out.add_term(Monomial::new(&swapped), c.conj());
        }
        Ok(out)
    }

    pub fn is_hermitian(&self) -> bool {
        self.bar().map(|b| &b == self).unwrap_or(false)
    }

    /// Multivariate division by a single divisor under grevlex.
    /// The remainder is zero iff `g` divides `self`.
    pub fn div_rem(&self, g: &Self) -> Result<(Self, Self), AlgebraError> {
        self.check_universe(g)?;
        let (lm, lc) = g.leading_term().ok_or(AlgebraError::DivisionByZero)?;
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut p = self.clone();
        let mut q = Self::zero(&self.universe);
        let mut r = Self::zero(&self.universe);
        while let Some((pm, pc)) = p.terms.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) {
            match lm.quotient_of(&pm) {
                Some(tm) => {
                    let tc = pc.checked_div(&lc).expect("nonzero leading coefficient");
                    for (gm, gc) in &g.terms {
                        p.add_term(gm.mul(&tm), gc.mul_ref(&tc).neg_ref());
                    }
                    q.add_term(tm, tc);
                }
                None => {
                    p.terms.remove(&pm);
                    r.add_term(pm, pc);
                }
            }
        }
        Ok((q, r))
    }

    /// Exact quotient `self / g`, or `NotDivisible`.
    pub fn exact_div(&self, g: &Self) -> Result<Self, AlgebraError> {
        self.check_universe(g)?;
        let (lm, lc) = g.leading_term().ok_or(AlgebraError::DivisionByZero)?;
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut p = self.clone();
        let mut q = Self::zero(&self.universe);
        while let Some((pm, pc)) = p.terms.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) {
            let tm = lm.quotient_of(&pm).ok_or(AlgebraError::NotDivisible)?;
            let tc = pc.checked_div(&lc).expect("nonzero leading coefficient");
            for (gm, gc) in &g.terms {
                p.add_term(gm.mul(&tm), gc.mul_ref(&tc).neg_ref());
            }
            q.add_term(tm, tc);
        }
        Ok(q)
    }

    pub fn divides(&self, f: &Self) -> bool {
        f.exact_div(self).is_ok()
    }

    /// Groups terms by their exponents on the `mask` variables; each group's
    /// coefficient is a polynomial in the remaining variables.
    pub fn coefficients_in(&self, mask: &[bool]) -> BTreeMap<Monomial, Self> {
        let mut out: BTreeMap<Monomial, Self> = BTreeMap::new();
        for (m, c) in &self.terms {
            let key = m.only(mask);
            let rest = m.without(mask);
            out.entry(key).or_insert_with(|| Self::zero(&self.universe)).add_term(rest, c.clone());
        }
        out
    }

    /// Coefficients as a polynomial in a single variable, index = power.
    pub fn univariate_coeffs(&self, var: usize) -> Vec<Self> {
        let d = usize::from(self.degree_in(var));
        let mut out = vec![Self::zero(&self.universe); d + 1];
        for (m, c) in &self.terms {
            let e = usize::from(m.exp(var));
            let mut rest = m.clone();
            rest.set_exp(var, 0);
            out[e].add_term(rest, c.clone());
        }
        out
    }

    /// Inverse of [`MPoly::univariate_coeffs`].
    pub fn from_univariate(universe: &Arc<VarUniverse>, var: usize, coeffs: &[Self]) -> Self {
        let mut out = Self::zero(universe);
        for (e, c) in coeffs.iter().enumerate() {
            for (m, a) in &c.terms {
                let mut mm = m.clone();
                mm.set_exp(var, m.exp(var) + e as u16);
                out.add_term(mm, a.clone());
            }
        }
        out
    }

    pub(crate) fn sub_monomial_term(&mut self, mono: Monomial, c: C) {
        self.add_term(mono, c.neg_ref());
    }
}

impl<'a, C: Scalar> Add for &'a MPoly<C> {
    type Output = MPoly<C>;
    fn add(self, rhs: &'a MPoly<C>) -> MPoly<C> {
        self.checked_add(rhs).expect("universe mismatch in polynomial addition")
    }
}

impl<'a, C: Scalar> Sub for &'a MPoly<C> {
    type Output = MPoly<C>;
    fn sub(self, rhs: &'a MPoly<C>) -> MPoly<C> {
        self.checked_sub(rhs).expect("universe mismatch in polynomial subtraction")
    }
}

impl<'a, C: Scalar> Mul for &'a MPoly<C> {
    type Output = MPoly<C>;
    fn mul(self, rhs: &'a MPoly<C>) -> MPoly<C> {
        self.checked_mul(rhs).expect("universe mismatch in polynomial multiplication")
    }
}

impl<C: Scalar> Add for MPoly<C> {
    type Output = MPoly<C>;
    fn add(self, rhs: MPoly<C>) -> MPoly<C> {
        &self + &rhs
    }
}

impl<C: Scalar> Sub for MPoly<C> {
    type Output = MPoly<C>;
    fn sub(self, rhs: MPoly<C>) -> MPoly<C> {
        &self - &rhs
    }
}

impl<C: Scalar> Mul for MPoly<C> {
    type Output = MPoly<C>;
    fn mul(self, rhs: MPoly<C>) -> MPoly<C> {
        &self * &rhs
    }
}

impl<C: Scalar> Neg for &MPoly<C> {
    type Output = MPoly<C>;
    fn neg(self) -> MPoly<C> {
        self.scale(&C::one().neg_ref())
    }
}

impl<C: Scalar> Neg for MPoly<C> {
    type Output = MPoly<C>;
    fn neg(self) -> MPoly<C> {
        -&self
    }
}

impl MPoly<GaussRat> {
    /// True when the coefficient should be printed as `- |c|`.
    fn is_negative_coeff(c: &GaussRat) -> bool {
        c.is_negative_real() || (c.re.is_zero() && c.im < num_rational::BigRational::zero())
    }
}

fn fmt_monomial(m: &Monomial, u: &VarUniverse, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let mut first = true;
    for (i, &e) in m.exps().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        write!(f, "{}", u.name(i))?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

/// Prints in the grammar accepted by [`crate::parse::parse_poly`], leading
/// term first.
impl fmt::Display for MPoly<GaussRat> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = Self::is_negative_coeff(c);
            let mag = if neg { c.neg_ref() } else { c.clone() };
            match (k == 0, neg) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                fmt_monomial(m, &self.universe, f)?;
            }
        }
        Ok(())
    }
}

impl<C: Scalar> fmt::Debug for MPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c:?})")?;
            if !m.is_one() {
                write!(f, "*")?;
                fmt_monomial(m, &self.universe, f)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u2() -> Arc<VarUniverse> {
        VarUniverse::source(2)
    }

    fn g(re: i64, im: i64) -> GaussRat {
        GaussRat::from_parts(re, 1, im, 1)
    }

    #[test]
    fn add_and_difference_of_squares() {
        let u = u2();
        let z1 = MPoly::var(&u, 0);
        assert_eq!(&z1 + &z1, z1.scale(&g(2, 0)));
        let i = MPoly::constant(&u, g(0, 1));
        let p = &(&z1 + &i) * &(&z1 - &i);
        let expect = &(&z1 * &z1) + &MPoly::one(&u);
        assert_eq!(p, expect);
    }

    #[test]
    fn universe_mismatch_is_an_error() {
        let a: MPoly = MPoly::var(&VarUniverse::source(2), 0);
        let b: MPoly = MPoly::var(&VarUniverse::target(2), 0);
        assert_eq!(poly_arith(ArithOp::Add, &a, &b), Err(AlgebraError::UniverseMismatch));
    }

    #[test]
    fn derivative_examples() {
        let u = u2();
        let z1 = MPoly::<GaussRat>::var(&u, 0);
        let z2 = MPoly::var(&u, 1);
        let f = &(&z1 * &z1) * &z2;
        assert_eq!(f.derivative(0), (&z1 * &z2).scale(&g(2, 0)));
        assert!(MPoly::constant(&u, g(3, 1)).derivative(0).is_zero());
        assert!(f.try_derivative(9).is_err());
    }

    #[test]
    fn substitute_onto_graph_and_origin() {
        let u = u2();
        let z1 = MPoly::<GaussRat>::var(&u, 0);
        let tau = MPoly::var(&u, u.xi(1));
        let xi1 = MPoly::var(&u, u.xi(0));
        let rho = &tau - &(&z1 * &xi1);
        let mut a: Vec<Subst> = vec![Subst::Keep; 4];
        a[u.xi(1)] = Subst::With(&z1 * &xi1);
        assert!(rho.substitute(&a).unwrap().is_zero());

        let f = &(&z1 * &z1) + &MPoly::constant(&u, g(5, -1));
        let zero = vec![Subst::With(MPoly::zero(&u)); 4];
        assert_eq!(f.substitute(&zero).unwrap(), MPoly::constant(&u, g(5, -1)));
    }

    #[test]
    fn exact_division() {
        let u = u2();
        let z1 = MPoly::<GaussRat>::var(&u, 0);
        let z2 = MPoly::var(&u, 1);
        let x1 = MPoly::var(&u, u.xi(0));
        let x2 = MPoly::var(&u, u.xi(1));
        let s = &(&(&z1 * &x1) + &(&z2 * &x2)) - &MPoly::one(&u);
        let f = &(&z1 * &x1) * &s;
        assert_eq!(f.exact_div(&s).unwrap(), &z1 * &x1);
        assert_eq!(f.exact_div(&f).unwrap(), MPoly::one(&u));
        assert_eq!(z1.exact_div(&z2), Err(AlgebraError::NotDivisible));
        assert_eq!(z1.exact_div(&MPoly::zero(&u)), Err(AlgebraError::DivisionByZero));
        let (q, r) = (&f + &z2).div_rem(&s).unwrap();
        assert_eq!(&(&q * &s) + &r, &f + &z2);
        assert!(!r.is_zero());
    }

    #[test]
    fn bar_example() {
        let u = u2();
        let f = &MPoly::<GaussRat>::var(&u, 0).scale(&g(0, 1)) + &MPoly::var(&u, u.xi(1)).scale(&g(2, 0));
        let expect = &MPoly::var(&u, u.xi(0)).scale(&g(0, -1)) + &MPoly::var(&u, 1).scale(&g(2, 0));
        assert_eq!(f.bar().unwrap(), expect);
        assert_eq!(f.bar().unwrap().bar().unwrap(), f);
        let asym: MPoly = MPoly::zero(&Arc::new(VarUniverse::new(2, 1, vec![]).unwrap()));
        assert!(matches!(asym.bar(), Err(AlgebraError::AsymmetricUniverse { .. })));
    }

    #[test]
    fn display_is_leading_first() {
        let u = u2();
        let z1 = MPoly::<GaussRat>::var(&u, 0);
        let p = &(&z1 * &z1).scale(&g(-2, 0)) + &MPoly::constant(&u, GaussRat::from_parts(3, 4, 0, 1));
        assert_eq!(p.to_string(), "-2*Z1^2 + 3/4");
        let q = z1.scale(&g(1, -1));
        assert_eq!(q.to_string(), "(1-i)*Z1");
        assert_eq!(z1.scale(&g(0, -1)).to_string(), "-i*Z1");
    }
}
