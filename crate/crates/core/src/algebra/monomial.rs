use std::cmp::Ordering;

use smallvec::SmallVec;

/// Exponent vector with cached total degree.
///
/// `Ord` is graded reverse lexicographic with variable 0 largest, so the
/// Z-block (which occupies the low indices) ranks ahead of the ξ-block.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    deg: u32,
    exps: SmallVec<[u16; 8]>,
}

impl Monomial {
    pub fn new(exps: &[u16]) -> Self {
        Monomial { deg: exps.iter().map(|&e| u32::from(e)).sum(), exps: SmallVec::from_slice(exps) }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial { deg: 0, exps: SmallVec::from_elem(0, nvars) }
    }

    pub fn var(nvars: usize, index: usize, e: u16) -> Self {
        let mut m = Self::one(nvars);
        m.exps[index] = e;
        m.deg = u32::from(e);
        m
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn exps(&self) -> &[u16] {
        &self.exps
    }

    pub fn exp(&self, index: usize) -> u16 {
        self.exps[index]
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let exps = self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect();
        Monomial { deg: self.deg + other.deg, exps }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let exps = other.exps.iter().zip(&self.exps).map(|(a, b)| a - b).collect();
        Some(Monomial { deg: other.deg - self.deg, exps })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let exps: SmallVec<[u16; 8]> =
            self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect();
        Monomial { deg: exps.iter().map(|&e| u32::from(e)).sum(), exps }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Copy with the exponents in `mask` zeroed.
    pub fn without(&self, mask: &[bool]) -> Monomial {
        let exps: SmallVec<[u16; 8]> = self
            .exps
            .iter()
            .zip(mask)
            .map(|(&e, &drop)| if drop { 0 } else { e })
            .collect();
        Monomial { deg: exps.iter().map(|&e| u32::from(e)).sum(), exps }
    }

    /// Copy keeping only the exponents in `mask`.
    pub fn only(&self, mask: &[bool]) -> Monomial {
        let inv: Vec<bool> = mask.iter().map(|b| !b).collect();
        self.without(&inv)
    }

    /// Variable index when the monomial is `x_j^e` with `e ≥ 1`.
    pub fn pure_power_var(&self) -> Option<usize> {
        let mut found = None;
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }

    pub(crate) fn set_exp(&mut self, index: usize, e: u16) {
        self.deg = self.deg - u32::from(self.exps[index]) + u32::from(e);
        self.exps[index] = e;
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.deg.cmp(&other.deg) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for (a, b) in self.exps.iter().zip(&other.exps).rev() {
            match a.cmp(b) {
                Ordering::Equal => continue,
                // smaller exponent in the last differing variable wins
                ord => return ord.reverse(),
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grevlex_order() {
        // x > y > z
        let x = Monomial::new(&[1, 0, 0]);
        let y = Monomial::new(&[0, 1, 0]);
        let z = Monomial::new(&[0, 0, 1]);
        assert!(x > y && y > z);
        // degree dominates
        assert!(Monomial::new(&[0, 0, 2]) > x);
        // x^2 z vs x y^2: grevlex puts x y^2 first (less z)
        assert!(Monomial::new(&[1, 2, 0]) > Monomial::new(&[2, 0, 1]));
    }

    #[test]
    fn divisibility() {
        let a = Monomial::new(&[1, 2]);
        let b = Monomial::new(&[2, 3]);
        assert!(a.divides(&b));
        assert_eq!(a.quotient_of(&b), Some(Monomial::new(&[1, 1])));
        assert_eq!(b.quotient_of(&a), None);
        assert_eq!(a.lcm(&Monomial::new(&[3, 0])), Monomial::new(&[3, 2]));
        assert_eq!(Monomial::new(&[0, 4]).pure_power_var(), Some(1));
        assert_eq!(a.pure_power_var(), None);
    }
}
