//! The cobar differential graded algebra of a reduced simplicial set,
//! with basis enumeration and loop-space homology.
//!
//! Generators are the nondegenerate simplices of dimension >= 1, with
//! degree one less than the dimension; monomials form the free monoid
//! on them. The differential on a generator `cx`, `dim x = n + 1`, is
//!
//! ```text
//! dcx = sum_{i=1}^{n} (-1)^i ( <[0..i]_x> . <[i..n+1]_x> - <d_i x> )
//! ```
//!
//! where `<y>` is `cy` for nondegenerate `y`, the unit for a degenerate
//! 1-simplex, and zero for a degenerate simplex of higher dimension;
//! products extend by the graded Leibniz rule.

use crate::chain::Chain;
use crate::homology::{ComplexError, GradedComplex, HomologyGroup, IntMatrix};
use crate::simplicial::{GenIdx, IncreasingMap, SimplexRef, SimplicialSet};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CobarError {
    #[error(
        "the cobar basis is infinite: {0} nondegenerate 1-simplices give degree-0 generators; \
         pass a word-length cap for bounded enumeration"
    )]
    InfiniteBasis(usize),
    #[error("space must be reduced for the cobar construction")]
    NotReduced,
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// An ordered product of generators; the empty product is the unit.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CobarMonomial(pub Vec<GenIdx>);

impl CobarMonomial {
    pub fn unit() -> Self {
        CobarMonomial(Vec::new())
    }

    pub fn generator(g: GenIdx) -> Self {
        CobarMonomial(vec![g])
    }

    pub fn concat(&self, other: &CobarMonomial) -> CobarMonomial {
        CobarMonomial(self.0.iter().chain(other.0.iter()).copied().collect())
    }
}

pub type CobarChain = Chain<CobarMonomial>;

/// The cobar algebra of one space.
#[derive(Clone, Copy)]
pub struct Cobar<'a> {
    pub set: &'a SimplicialSet,
}

impl<'a> Cobar<'a> {
    pub fn new(set: &'a SimplicialSet) -> Result<Self, CobarError> {
        if !set.is_reduced() {
            return Err(CobarError::NotReduced);
        }
        Ok(Cobar { set })
    }

    pub fn degree(&self, m: &CobarMonomial) -> usize {
        m.0.iter().map(|&g| self.set.gen_dim(g) - 1).sum()
    }

    pub fn label(&self, m: &CobarMonomial) -> String {
        if m.0.is_empty() {
            return "1".into();
        }
        m.0.iter()
            .map(|&g| format!("c({})", self.set.gen_name(g)))
            .collect::<Vec<_>>()
            .join("·")
    }

    /// `<y>`: the class of a possibly degenerate face in the cobar basis.
    fn bracket(&self, y: &SimplexRef) -> CobarChain {
        if !y.is_degenerate() {
            CobarChain::term(CobarMonomial::generator(y.gen), 1)
        } else if y.dim == 1 {
            CobarChain::term(CobarMonomial::unit(), 1)
        } else {
            CobarChain::zero()
        }
    }

    fn product(&self, u: &CobarChain, v: &CobarChain) -> CobarChain {
        let mut out = CobarChain::zero();
        for (mu, cu) in u.iter() {
            for (mv, cv) in v.iter() {
                out.add_term(mu.concat(mv), cu * cv);
            }
        }
        out
    }

    fn generator_diff(&self, g: GenIdx) -> CobarChain {
        let dim = self.set.gen_dim(g);
        let x = SimplexRef::generator(g, dim);
        let n = dim - 1;
        let mut out = CobarChain::zero();
        for i in 1..=n {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            let head = self.bracket(&self.set.apply(&x, &IncreasingMap::new((0..=i).collect(), dim)));
            let tail = self
                .bracket(&self.set.apply(&x, &IncreasingMap::new((i..=n + 1).collect(), dim)));
            out.add_scaled(&self.product(&head, &tail), sign);
            out.add_scaled(&self.bracket(&self.set.face(&x, i)), -sign);
        }
        out
    }

    /// Differential on a monomial via the graded Leibniz rule.
    pub fn diff(&self, m: &CobarMonomial) -> CobarChain {
        let mut out = CobarChain::zero();
        let mut sign = 1i64;
        for (k, &g) in m.0.iter().enumerate() {
            let left = CobarMonomial(m.0[..k].to_vec());
            let right = CobarMonomial(m.0[k + 1..].to_vec());
            let dg = self.generator_diff(g);
            for (mid, c) in dg.iter() {
                out.add_term(left.concat(mid).concat(&right), sign * c);
            }
            if self.set.gen_dim(g) % 2 == 0 {
                // generator of odd degree flips the sign for later factors
                sign = -sign;
            }
        }
        out
    }

    pub fn diff_chain(&self, c: &CobarChain) -> CobarChain {
        c.flat_map(|m| self.diff(m))
    }

    fn degree_zero_generators(&self) -> usize {
        self.set.gen_count(1)
    }

    /// All monomials of one degree, ordered. With degree-0 generators a
    /// word-length cap is mandatory.
    pub fn basis(&self, degree: usize, cap: Option<usize>) -> Result<Vec<CobarMonomial>, CobarError> {
        if cap.is_none() && self.degree_zero_generators() > 0 {
            return Err(CobarError::InfiniteBasis(self.degree_zero_generators()));
        }
        let gens: Vec<(GenIdx, usize)> = (1..=self.set.max_gen_dim())
            .flat_map(|d| self.set.generators(d).iter().map(move |&g| (g, d - 1)))
            .collect();
        let mut out = Vec::new();
        let mut word = Vec::new();
        self.enumerate(&gens, degree, cap.unwrap_or(usize::MAX), &mut word, &mut out);
        Ok(out)
    }

    fn enumerate(
        &self,
        gens: &[(GenIdx, usize)],
        remaining: usize,
        cap: usize,
        word: &mut Vec<GenIdx>,
        out: &mut Vec<CobarMonomial>,
    ) {
        if remaining == 0 {
            out.push(CobarMonomial(word.clone()));
        }
        if word.len() >= cap {
            return;
        }
        for &(g, deg) in gens {
            if deg <= remaining {
                word.push(g);
                self.enumerate(gens, remaining - deg, cap, word, out);
                word.pop();
            }
        }
    }

    /// The normalized cobar complex up to `max_degree` inclusive.
    pub fn complex(&self, max_degree: usize) -> Result<GradedComplex, CobarError> {
        if self.degree_zero_generators() > 0 {
            return Err(CobarError::InfiniteBasis(self.degree_zero_generators()));
        }
        let mut bases = Vec::new();
        let mut indices: Vec<BTreeMap<CobarMonomial, usize>> = Vec::new();
        for k in 0..=max_degree {
            let b = self.basis(k, None)?;
            let mut idx = BTreeMap::new();
            for (i, m) in b.iter().enumerate() {
                idx.insert(m.clone(), i);
            }
            bases.push(b);
            indices.push(idx);
        }
        let mut boundaries = Vec::new();
        for k in 0..=max_degree {
            let cols = bases[k].len();
            let rows = if k == 0 { 0 } else { bases[k - 1].len() };
            let mut m = IntMatrix::zero(rows, cols);
            if k > 0 {
                for (j, mono) in bases[k].iter().enumerate() {
                    for (t, c) in self.diff(mono).iter() {
                        let i = *indices[k - 1]
                            .get(t)
                            .expect("differential left the enumerated basis");
                        m.add_to(i, j, c);
                    }
                }
            }
            boundaries.push(m);
        }
        let labels = bases
            .iter()
            .map(|b| b.iter().map(|m| self.label(m)).collect())
            .collect();
        Ok(GradedComplex::new(labels, boundaries)?)
    }

    /// Loop-space homology `H_k` for `k <= max_degree`.
    pub fn homology(&self, max_degree: usize) -> Result<Vec<HomologyGroup>, CobarError> {
        let complex = self.complex(max_degree + 1)?;
        Ok(complex.homology_table(max_degree))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::loop_group::{Convention, LoopGroup};
    use crate::twisting::{chain_boundary, dot, normalize, tc, GChain};

    fn builtin(name: &str, params: &[usize]) -> SimplicialSet {
        SimplicialSet::builtin(name, params).unwrap()
    }

    #[test]
    fn basis_counts() {
        let s3 = builtin("sphere", &[3]);
        let c = Cobar::new(&s3).unwrap();
        assert_eq!(c.basis(4, None).unwrap().len(), 1); // cx·cx
        assert_eq!(c.basis(3, None).unwrap().len(), 0);
        let s2 = builtin("sphere", &[2]);
        let c = Cobar::new(&s2).unwrap();
        assert_eq!(c.basis(3, None).unwrap().len(), 1); // cx·cx·cx
        let w = builtin("wedge_of_spheres", &[2, 2]);
        let c = Cobar::new(&w).unwrap();
        assert_eq!(c.basis(2, None).unwrap().len(), 4);
        // a circle has a degree-0 generator: unbounded without a cap
        let circle = builtin("circle", &[]);
        let c = Cobar::new(&circle).unwrap();
        assert!(matches!(c.basis(0, None), Err(CobarError::InfiniteBasis(1))));
        assert_eq!(c.basis(0, Some(3)).unwrap().len(), 4); // 1, e, ee, eee
    }

    #[test]
    fn sphere_differentials_vanish() {
        for n in 2..=5usize {
            let s = builtin("sphere", &[n]);
            let c = Cobar::new(&s).unwrap();
            let top = s.generators(n)[0];
            assert!(c.diff(&CobarMonomial::generator(top)).is_zero());
        }
    }

    #[test]
    fn reduced_simplex_three_cell() {
        // frozen from expanding the generator formula over the face
        // table: dcx = -c(e01)c(e123) + c(e023) + c(e012)c(e23) - c(e013)
        let rs = builtin("reduced_simplex", &[3]);
        let c = Cobar::new(&rs).unwrap();
        let by_name = |n: &str| -> GenIdx {
            (0..)
                .take(rs.gen_count(1) + rs.gen_count(2) + rs.gen_count(3) + 1)
                .find(|&g| rs.gen_name(g) == n)
                .unwrap()
        };
        let top = by_name("e0123");
        let d = c.diff(&CobarMonomial::generator(top));
        let mut expect = CobarChain::zero();
        expect.add_term(CobarMonomial(vec![by_name("e01"), by_name("e123")]), -1);
        expect.add_term(CobarMonomial::generator(by_name("e023")), 1);
        expect.add_term(CobarMonomial(vec![by_name("e012"), by_name("e23")]), 1);
        expect.add_term(CobarMonomial::generator(by_name("e013")), -1);
        assert_eq!(d, expect);
    }

    #[test]
    fn d_squared_vanishes_on_capped_bases() {
        let rs = builtin("reduced_simplex", &[3]);
        let c = Cobar::new(&rs).unwrap();
        for degree in 0..=4usize {
            for m in c.basis(degree, Some(4)).unwrap() {
                let dd = c.diff_chain(&c.diff(&m));
                assert!(dd.is_zero(), "d² ≠ 0 on {}", c.label(&m));
            }
        }
    }

    #[test]
    fn leibniz_rule() {
        let rs = builtin("reduced_simplex", &[3]);
        let c = Cobar::new(&rs).unwrap();
        let gens: Vec<GenIdx> = (2..=3)
            .flat_map(|d| rs.generators(d).iter().copied())
            .collect();
        for &a in &gens {
            for &b in &gens {
                let m = CobarMonomial(vec![a, b]);
                let lhs = c.diff(&m);
                let mut rhs = CobarChain::zero();
                for (t, k) in c.diff(&CobarMonomial::generator(a)).iter() {
                    rhs.add_term(t.concat(&CobarMonomial::generator(b)), k);
                }
                let sign = if (rs.gen_dim(a) - 1) % 2 == 0 { 1 } else { -1 };
                for (t, k) in c.diff(&CobarMonomial::generator(b)).iter() {
                    rhs.add_term(CobarMonomial::generator(a).concat(t), sign * k);
                }
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn sphere_homology_is_polynomial() {
        // H_*(Ω S^{n+1}) = Z[u], |u| = n
        for n in 1..=3usize {
            let s = builtin("sphere", &[n + 1]);
            let c = Cobar::new(&s).unwrap();
            let h = c.homology(6).unwrap();
            for (k, group) in h.iter().enumerate() {
                let expected = if k % n == 0 { 1 } else { 0 };
                assert_eq!(group.betti, expected, "sphere({}), degree {k}", n + 1);
                assert!(group.torsion.is_empty());
            }
        }
    }

    #[test]
    fn wedge_homology_doubles() {
        let w = builtin("wedge_of_spheres", &[2, 2]);
        let c = Cobar::new(&w).unwrap();
        let h = c.homology(4).unwrap();
        for (k, group) in h.iter().enumerate() {
            assert_eq!(group.betti, 1 << k, "degree {k}");
            assert!(group.torsion.is_empty());
        }
    }

    /// Mapping `cx -> tc(x)` and products to shuffle dots intertwines the
    /// cobar differential with the negated normalized word boundary.
    #[test]
    fn intertwines_with_group_ring_boundary() {
        let rs = builtin("reduced_simplex", &[3]);
        let c = Cobar::new(&rs).unwrap();
        let lg = LoopGroup::new(&rs, Convention::A2B1);
        let theta = |m: &CobarMonomial| -> GChain {
            let mut acc = GChain::term(crate::loop_group::GroupWord::identity(0), 1);
            for &g in &m.0 {
                let t = tc(&lg, &SimplexRef::generator(g, rs.gen_dim(g)));
                acc = dot(&lg, &acc, &t);
            }
            acc
        };
        for dim in 2..=3usize {
            for &g in rs.generators(dim) {
                let x = SimplexRef::generator(g, dim);
                let n = dim - 1;
                let lhs = normalize(&lg, &chain_boundary(&lg, &tc(&lg, &x), n));
                let mut rhs = GChain::zero();
                for (m, k) in c.diff(&CobarMonomial::generator(g)).iter() {
                    rhs.add_scaled(&theta(m), -k);
                }
                assert_eq!(lhs, normalize(&lg, &rhs), "generator {}", rs.gen_name(g));
            }
        }
    }
}
