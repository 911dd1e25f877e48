//! Finitely supported integer linear combinations over an ordered basis.

use std::collections::BTreeMap;
use std::fmt;

/// An integer chain: a finite formal sum of basis elements with nonzero
/// `i64` coefficients. The basis type orders the terms, which makes chain
/// equality and printing canonical.
#[derive(Clone, PartialEq, Eq)]
pub struct Chain<B: Ord> {
    terms: BTreeMap<B, i64>,
}

impl<B: Ord> Default for Chain<B> {
    fn default() -> Self {
        Chain { terms: BTreeMap::new() }
    }
}

impl<B: Ord + Clone> Chain<B> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(basis: B, coeff: i64) -> Self {
        let mut c = Self::zero();
        c.add_term(basis, coeff);
        c
    }

    pub fn add_term(&mut self, basis: B, coeff: i64) {
        if coeff == 0 {
            return;
        }
        match self.terms.entry(basis) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if *o.get() == 0 {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&mut self, other: &Chain<B>) {
        for (b, c) in &other.terms {
            self.add_term(b.clone(), *c);
        }
    }

    pub fn add_scaled(&mut self, other: &Chain<B>, scale: i64) {
        if scale == 0 {
            return;
        }
        for (b, c) in &other.terms {
            self.add_term(b.clone(), c * scale);
        }
    }

    pub fn scaled(&self, scale: i64) -> Chain<B> {
        let mut out = Chain::zero();
        out.add_scaled(self, scale);
        out
    }

    pub fn sub(&mut self, other: &Chain<B>) {
        self.add_scaled(other, -1);
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

    pub fn coeff(&self, basis: &B) -> i64 {
        self.terms.get(basis).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&B, i64)> {
        self.terms.iter().map(|(b, c)| (b, *c))
    }

    pub fn into_terms(self) -> Vec<(B, i64)> {
        self.terms.into_iter().collect()
    }

    /// Push the chain through a basis map, combining collisions.
    pub fn map<B2: Ord + Clone>(&self, mut f: impl FnMut(&B) -> B2) -> Chain<B2> {
        let mut out = Chain::zero();
        for (b, c) in self.iter() {
            out.add_term(f(b), c);
        }
        out
    }

    /// Push through a map whose values are chains (linear extension).
    pub fn flat_map<B2: Ord + Clone>(&self, mut f: impl FnMut(&B) -> Chain<B2>) -> Chain<B2> {
        let mut out = Chain::zero();
        for (b, c) in self.iter() {
            out.add_scaled(&f(b), c);
        }
        out
    }

    /// Drop basis elements failing the predicate.
    pub fn retain(&self, mut keep: impl FnMut(&B) -> bool) -> Chain<B> {
        let mut out = Chain::zero();
        for (b, c) in self.iter() {
            if keep(b) {
                out.add_term(b.clone(), c);
            }
        }
        out
    }
}

impl<B: Ord + Clone> FromIterator<(B, i64)> for Chain<B> {
    fn from_iter<T: IntoIterator<Item = (B, i64)>>(iter: T) -> Self {
        let mut c = Chain::zero();
        for (b, k) in iter {
            c.add_term(b, k);
        }
        c
    }
}

impl<B: Ord + fmt::Display> fmt::Display for Chain<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (b, c)) in self.terms.iter().enumerate() {
            if idx == 0 {
                if *c < 0 {
                    write!(f, "-")?;
                }
            } else if *c < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = c.unsigned_abs();
            if a != 1 {
                write!(f, "{}*", a)?;
            }
            write!(f, "{}", b)?;
        }
        Ok(())
    }
}

impl<B: Ord + fmt::Debug> fmt::Debug for Chain<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (b, c)) in self.terms.iter().enumerate() {
            if idx > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}*{:?}", c, b)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cancellation_removes_support() {
        let mut c = Chain::term("a", 2);
        c.add_term("b", 1);
        c.add_term("a", -2);
        assert_eq!(c.len(), 1);
        assert_eq!(c.coeff(&"b"), 1);
        assert_eq!(c.coeff(&"a"), 0);
    }

    #[test]
    fn display_is_canonical() {
        let mut c = Chain::term("y", -1);
        c.add_term("x", 3);
        assert_eq!(format!("{}", c), "3*x - y");
        assert_eq!(format!("{}", Chain::<&str>::zero()), "0");
    }
}
