//! Elementary prisms and reduced prism words.
//!
//! An elementary prism `(x, i)^±` with `x` of dimension `n+1` connects
//! `d_{i+1} x` to `d_i x` in dimension `n`. Words compose target-to-source
//! and live in the groupoid where `(s_i y, i)` is an identity and inverse
//! pairs cancel; words are kept reduced at all times. The pseudosection
//! `iota` and the twisting loop `tau` of a reduced space are particular
//! prism words, and `verify_pseudosection` mechanically checks the face
//! and degeneracy identities they satisfy.

use crate::simplicial::{SimplexRef, SimplicialSet};
use thiserror::Error;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ElementaryPrism {
    pub simplex: SimplexRef,
    pub pos: usize,
    pub exp: i8,
}

/// A composable, reduced word of elementary prisms at a fixed dimension.
/// The anchor records the source object, which keeps identity words
/// meaningful.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PrismWord {
    pub dim: usize,
    anchor: SimplexRef,
    letters: Vec<ElementaryPrism>,
}

impl PrismWord {
    pub fn letters(&self) -> &[ElementaryPrism] {
        &self.letters
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

#[derive(Debug, Error)]
#[error("{identity} failed on {simplex}: lhs = {lhs}, rhs = {rhs}")]
pub struct PrismFailure {
    pub identity: String,
    pub simplex: String,
    pub lhs: String,
    pub rhs: String,
}

/// Prism arithmetic over a fixed simplicial set.
#[derive(Clone, Copy)]
pub struct PrismCalculus<'a> {
    pub set: &'a SimplicialSet,
}

impl<'a> PrismCalculus<'a> {
    pub fn new(set: &'a SimplicialSet) -> Self {
        PrismCalculus { set }
    }

    pub fn letter_source(&self, l: &ElementaryPrism) -> SimplexRef {
        if l.exp == 1 {
            self.set.face(&l.simplex, l.pos + 1)
        } else {
            self.set.face(&l.simplex, l.pos)
        }
    }

    pub fn letter_target(&self, l: &ElementaryPrism) -> SimplexRef {
        if l.exp == 1 {
            self.set.face(&l.simplex, l.pos)
        } else {
            self.set.face(&l.simplex, l.pos + 1)
        }
    }

    fn letter_is_identity(&self, l: &ElementaryPrism) -> bool {
        self.set.degenerate_at(&l.simplex, l.pos)
    }

    pub fn identity(&self, at: SimplexRef) -> PrismWord {
        PrismWord { dim: at.dim, anchor: at, letters: Vec::new() }
    }

    /// Assemble a word, erasing identity letters and cancelling adjacent
    /// inverse pairs. Chaining is not enforced here so that corrupt face
    /// tables surface as reported verification failures instead of
    /// panics; see [`Self::chain_break`].
    pub fn word(
        &self,
        anchor: SimplexRef,
        letters: impl IntoIterator<Item = ElementaryPrism>,
    ) -> PrismWord {
        let dim = anchor.dim;
        let mut out: Vec<ElementaryPrism> = Vec::new();
        for l in letters {
            assert_eq!(l.simplex.dim, dim + 1, "prism letter dimension mismatch");
            assert!(l.pos <= dim, "prism position out of range");
            if self.letter_is_identity(&l) {
                continue;
            }
            if let Some(top) = out.last() {
                if top.simplex == l.simplex && top.pos == l.pos && top.exp == -l.exp {
                    out.pop();
                    continue;
                }
            }
            out.push(l);
        }
        PrismWord { dim, anchor, letters: out }
    }

    /// First position where the target of one letter fails to match the
    /// source of the next (position 0 checks the anchor).
    pub fn chain_break(&self, w: &PrismWord) -> Option<usize> {
        let mut cursor = w.anchor.clone();
        for (k, l) in w.letters.iter().enumerate() {
            if self.letter_source(l) != cursor {
                return Some(k);
            }
            cursor = self.letter_target(l);
        }
        None
    }

    pub fn source(&self, w: &PrismWord) -> SimplexRef {
        w.anchor.clone()
    }

    pub fn target(&self, w: &PrismWord) -> SimplexRef {
        w.letters
            .last()
            .map(|l| self.letter_target(l))
            .unwrap_or_else(|| w.anchor.clone())
    }

    pub fn compose(&self, u: &PrismWord, v: &PrismWord) -> PrismWord {
        assert_eq!(self.target(u), self.source(v), "prism words do not compose");
        self.word(
            u.anchor.clone(),
            u.letters.iter().chain(v.letters.iter()).cloned(),
        )
    }

    pub fn inverse(&self, w: &PrismWord) -> PrismWord {
        self.word(
            self.target(w),
            w.letters.iter().rev().map(|l| ElementaryPrism {
                simplex: l.simplex.clone(),
                pos: l.pos,
                exp: -l.exp,
            }),
        )
    }

    /// `d_j` letter-wise: `(x, i) -> (d_j x, i-1)` below the position,
    /// an identity at the position, `(d_{j+1} x, i)` above it.
    pub fn face(&self, w: &PrismWord, j: usize) -> PrismWord {
        assert!(w.dim >= 1 && j <= w.dim, "prism face index out of range");
        let anchor = self.set.face(&w.anchor, j);
        self.word(
            anchor,
            w.letters.iter().filter_map(|l| {
                if j < l.pos {
                    Some(ElementaryPrism {
                        simplex: self.set.face(&l.simplex, j),
                        pos: l.pos - 1,
                        exp: l.exp,
                    })
                } else if j == l.pos {
                    None
                } else {
                    Some(ElementaryPrism {
                        simplex: self.set.face(&l.simplex, j + 1),
                        pos: l.pos,
                        exp: l.exp,
                    })
                }
            }),
        )
    }

    /// `s_j` letter-wise; at the position the letter splits into the
    /// two-letter composite `(s_i x, i+1)(s_{i+1} x, i)`.
    pub fn degeneracy(&self, w: &PrismWord, j: usize) -> PrismWord {
        assert!(j <= w.dim, "prism degeneracy index out of range");
        let anchor = self.set.degeneracy(&w.anchor, j);
        let mut letters = Vec::new();
        for l in &w.letters {
            let i = l.pos;
            if j < i {
                letters.push(ElementaryPrism {
                    simplex: self.set.degeneracy(&l.simplex, j),
                    pos: i + 1,
                    exp: l.exp,
                });
            } else if j > i {
                letters.push(ElementaryPrism {
                    simplex: self.set.degeneracy(&l.simplex, j + 1),
                    pos: i,
                    exp: l.exp,
                });
            } else {
                let first = ElementaryPrism {
                    simplex: self.set.degeneracy(&l.simplex, i),
                    pos: i + 1,
                    exp: l.exp,
                };
                let second = ElementaryPrism {
                    simplex: self.set.degeneracy(&l.simplex, i + 1),
                    pos: i,
                    exp: l.exp,
                };
                if l.exp == 1 {
                    letters.push(first);
                    letters.push(second);
                } else {
                    letters.push(second);
                    letters.push(first);
                }
            }
        }
        self.word(anchor, letters)
    }

    /// The pseudosection: the prism word walking `x` down to the base
    /// point, letter `k` being
    /// `(s_n ... s_{n-k+1} d_{n-k+1} ... d_{n-1} x, n-k)`.
    pub fn iota(&self, x: &SimplexRef) -> PrismWord {
        assert!(self.set.is_reduced(), "iota needs a reduced simplicial set");
        let n = x.dim;
        let mut letters = Vec::new();
        for k in 1..=n {
            let mut y = x.clone();
            for t in (n - k + 1..=n.saturating_sub(1)).rev() {
                y = self.set.face(&y, t);
            }
            for t in n - k + 1..=n {
                y = self.set.degeneracy(&y, t);
            }
            letters.push(ElementaryPrism { simplex: y, pos: n - k, exp: 1 });
        }
        self.word(x.clone(), letters)
    }

    /// `tau x = (iota d_n x)^{-1} (x, n-1) (iota d_{n-1} x)`, a loop at
    /// the base point one dimension down.
    pub fn tau(&self, x: &SimplexRef) -> PrismWord {
        let n = x.dim;
        assert!(n >= 1, "tau needs a simplex of dimension >= 1");
        let left = self.inverse(&self.iota(&self.set.face(x, n)));
        let mid = self.word(
            self.set.face(x, n),
            [ElementaryPrism { simplex: x.clone(), pos: n - 1, exp: 1 }],
        );
        let right = self.iota(&self.set.face(x, n - 1));
        self.compose(&self.compose(&left, &mid), &right)
    }

    pub fn display(&self, w: &PrismWord) -> String {
        if w.letters.is_empty() {
            return format!("id({})", self.set.display(&w.anchor));
        }
        w.letters
            .iter()
            .map(|l| {
                let e = if l.exp == 1 { "" } else { "^-1" };
                format!("({},{}){}", self.set.display(&l.simplex), l.pos, e)
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    fn expect_eq(
        &self,
        identity: &str,
        x: &SimplexRef,
        lhs: &PrismWord,
        rhs: &PrismWord,
    ) -> Result<(), PrismFailure> {
        if lhs == rhs {
            Ok(())
        } else {
            Err(PrismFailure {
                identity: identity.to_string(),
                simplex: self.set.display(x),
                lhs: self.display(lhs),
                rhs: self.display(rhs),
            })
        }
    }

    /// Check every face/degeneracy identity of the pseudosection and of
    /// `tau` on one simplex, as equalities of reduced prism words.
    pub fn verify_pseudosection(&self, x: &SimplexRef) -> Result<(), PrismFailure> {
        let set = self.set;
        let n = x.dim;
        assert!(n >= 1);
        let ix = self.iota(x);
        for (name, w) in [("iota x", &ix)] {
            if let Some(k) = self.chain_break(w) {
                return Err(PrismFailure {
                    identity: format!("{name} chains at letter {k}"),
                    simplex: self.set.display(x),
                    lhs: self.display(w),
                    rhs: "target(k-1) = source(k)".into(),
                });
            }
        }
        // iota runs from x to the n-fold degenerate base point
        self.expect_eq("source(iota x) = x", x, &self.identity(self.source(&ix)), &self.identity(x.clone()))?;
        self.expect_eq(
            "target(iota x) = v",
            x,
            &self.identity(self.target(&ix)),
            &self.identity(set.base_at(n)),
        )?;
        for i in 0..n {
            self.expect_eq(
                &format!("d_{i} iota x = iota d_{i} x"),
                x,
                &self.face(&ix, i),
                &self.iota(&set.face(x, i)),
            )?;
        }
        let tau_x = self.tau(x);
        if let Some(k) = self.chain_break(&tau_x) {
            return Err(PrismFailure {
                identity: format!("tau x chains at letter {k}"),
                simplex: self.set.display(x),
                lhs: self.display(&tau_x),
                rhs: "target(k-1) = source(k)".into(),
            });
        }
        self.expect_eq(
            "d_n iota x = (iota d_n x)(tau x)",
            x,
            &self.face(&ix, n),
            &self.compose(&self.iota(&set.face(x, n)), &tau_x),
        )?;
        for i in 0..=n {
            self.expect_eq(
                &format!("s_{i} iota x = iota s_{i} x"),
                x,
                &self.degeneracy(&ix, i),
                &self.iota(&set.degeneracy(x, i)),
            )?;
        }
        // tau is a loop at the base point
        self.expect_eq(
            "source(tau x) = v",
            x,
            &self.identity(self.source(&tau_x)),
            &self.identity(set.base_at(n - 1)),
        )?;
        self.expect_eq(
            "target(tau x) = v",
            x,
            &self.identity(self.target(&tau_x)),
            &self.identity(set.base_at(n - 1)),
        )?;
        if n >= 2 {
            for i in 0..n - 1 {
                self.expect_eq(
                    &format!("d_{i} tau x = tau d_{i} x"),
                    x,
                    &self.face(&tau_x, i),
                    &self.tau(&set.face(x, i)),
                )?;
            }
            self.expect_eq(
                "d_{n-1} tau x = (tau d_n x)^{-1}(tau d_{n-1} x)",
                x,
                &self.face(&tau_x, n - 1),
                &self.compose(
                    &self.inverse(&self.tau(&set.face(x, n))),
                    &self.tau(&set.face(x, n - 1)),
                ),
            )?;
        }
        for i in 0..n {
            self.expect_eq(
                &format!("s_{i} tau x = tau s_{i} x"),
                x,
                &self.degeneracy(&tau_x, i),
                &self.tau(&set.degeneracy(x, i)),
            )?;
        }
        self.expect_eq(
            "tau s_n x = 1",
            x,
            &self.tau(&set.degeneracy(x, n)),
            &self.identity(set.base_at(n)),
        )?;
        Ok(())
    }
}
