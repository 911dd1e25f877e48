//! The free simplicial loop group of a reduced simplicial set.
//!
//! `G_n X` is freely generated by letters `tau(x)` for `x` in `X_{n+1}`,
//! minus one excluded degeneracy per convention: the four conventions in
//! use in the literature differ in whether paths start or end at the base
//! point (`A1`/`A2`) and in the multiplication order (`B1`/`B2`). Words
//! are kept freely reduced with excluded letters erased eagerly, so a
//! `GroupWord` is a canonical form and equality is structural.

use crate::simplicial::{SimplexRef, SimplicialSet};
use std::fmt;

/// Which of the four twisting-function conventions is in force.
///
/// `A1*` conventions exclude `s_0`-degenerate letters and push face and
/// degeneracy indices up by one; `A2*` conventions exclude top-degenerate
/// letters and keep indices. `B1`/`B2` swap the factor order in the one
/// twisted face of a generator.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Convention {
    A1B1,
    A1B2,
    A2B1,
    A2B2,
}

impl Convention {
    pub const ALL: [Convention; 4] = [
        Convention::A1B1,
        Convention::A1B2,
        Convention::A2B1,
        Convention::A2B2,
    ];

    fn top_indexed(self) -> bool {
        matches!(self, Convention::A2B1 | Convention::A2B2)
    }

    fn inverse_first(self) -> bool {
        matches!(self, Convention::A1B2 | Convention::A2B1)
    }
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Convention::A1B1 => "a1-b1",
            Convention::A1B2 => "a1-b2",
            Convention::A2B1 => "a2-b1",
            Convention::A2B2 => "a2-b2",
        };
        write!(f, "{s}")
    }
}

/// A freely reduced word in `G_n X`. Letters are `(n+1)`-simplices with
/// exponent `±1`; the excluded degeneracy never appears.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct GroupWord {
    pub dim: usize,
    letters: Vec<(SimplexRef, i8)>,
}

impl GroupWord {
    pub fn identity(dim: usize) -> Self {
        GroupWord { dim, letters: Vec::new() }
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

    pub fn letters(&self) -> &[(SimplexRef, i8)] {
        &self.letters
    }
}

/// The loop group of a fixed space under a fixed convention. All methods
/// are pure; the struct just bundles the two parameters.
#[derive(Clone, Copy)]
pub struct LoopGroup<'a> {
    pub set: &'a SimplicialSet,
    pub conv: Convention,
}

impl<'a> LoopGroup<'a> {
    pub fn new(set: &'a SimplicialSet, conv: Convention) -> Self {
        LoopGroup { set, conv }
    }

    /// Whether `x` is the excluded degeneracy, i.e. `tau(x) = 1`.
    pub fn is_excluded(&self, x: &SimplexRef) -> bool {
        debug_assert!(x.dim >= 1);
        if self.conv.top_indexed() {
            self.set.degenerate_at(x, x.dim - 1)
        } else {
            self.set.degenerate_at(x, 0)
        }
    }

    /// The generator `tau(x)` for `x` of dimension `n + 1`, as a word in
    /// `G_n X`; empty when `x` is the excluded degeneracy.
    pub fn tau(&self, x: &SimplexRef) -> GroupWord {
        assert!(x.dim >= 1, "tau needs a simplex of dimension >= 1");
        let dim = x.dim - 1;
        if self.is_excluded(x) {
            GroupWord::identity(dim)
        } else {
            GroupWord { dim, letters: vec![(x.clone(), 1)] }
        }
    }

    /// Build a reduced word: erase excluded letters, cancel adjacent
    /// inverse pairs.
    pub fn from_letters(
        &self,
        dim: usize,
        letters: impl IntoIterator<Item = (SimplexRef, i8)>,
    ) -> GroupWord {
        let mut out: Vec<(SimplexRef, i8)> = Vec::new();
        for (x, e) in letters {
            assert_eq!(x.dim, dim + 1, "letter dimension mismatch in G_{dim}");
            assert!(e == 1 || e == -1);
            if self.is_excluded(&x) {
                continue;
            }
            if let Some(top) = out.last() {
                if top.0 == x && top.1 == -e {
                    out.pop();
                    continue;
                }
            }
            out.push((x, e));
        }
        GroupWord { dim, letters: out }
    }

    pub fn mul(&self, u: &GroupWord, v: &GroupWord) -> GroupWord {
        assert_eq!(u.dim, v.dim, "cannot concatenate words of different dimensions");
        self.from_letters(u.dim, u.letters.iter().chain(v.letters.iter()).cloned())
    }

    pub fn inv(&self, w: &GroupWord) -> GroupWord {
        GroupWord {
            dim: w.dim,
            letters: w.letters.iter().rev().map(|(x, e)| (x.clone(), -e)).collect(),
        }
    }

    /// `d_i` of a single generator letter, before reduction. Every index
    /// except one is a plain face of the underlying simplex; the special
    /// index (the bottom for A1, the top for A2) produces the two-letter
    /// combination from the convention's table row.
    fn letter_face(&self, x: &SimplexRef, exp: i8, i: usize) -> Vec<(SimplexRef, i8)> {
        let n = x.dim - 1;
        let set = self.set;
        let twisted = |a: SimplexRef, b: SimplexRef| -> Vec<(SimplexRef, i8)> {
            let pair = if self.conv.inverse_first() {
                vec![(a, -1), (b, 1)]
            } else {
                vec![(b, 1), (a, -1)]
            };
            if exp == 1 {
                pair
            } else {
                pair.into_iter().rev().map(|(y, e)| (y, -e)).collect()
            }
        };
        if self.conv.top_indexed() {
            if i < n {
                vec![(set.face(x, i), exp)]
            } else {
                twisted(set.face(x, n + 1), set.face(x, n))
            }
        } else if i > 0 {
            vec![(set.face(x, i + 1), exp)]
        } else {
            twisted(set.face(x, 0), set.face(x, 1))
        }
    }

    pub fn face(&self, w: &GroupWord, i: usize) -> GroupWord {
        assert!(w.dim >= 1 && i <= w.dim, "face index out of range");
        self.from_letters(
            w.dim - 1,
            w.letters.iter().flat_map(|(x, e)| self.letter_face(x, *e, i)),
        )
    }

    pub fn degeneracy(&self, w: &GroupWord, i: usize) -> GroupWord {
        assert!(i <= w.dim, "degeneracy index out of range");
        let shift = usize::from(!self.conv.top_indexed());
        self.from_letters(
            w.dim + 1,
            w.letters
                .iter()
                .map(|(x, e)| (self.set.degeneracy(x, i + shift), *e)),
        )
    }

    /// Smallest `i` with `s_i d_i w = w`, if the word is degenerate.
    pub fn degenerate_at(&self, w: &GroupWord) -> Option<usize> {
        if w.dim == 0 {
            return None;
        }
        (0..w.dim).find(|&i| self.degeneracy(&self.face(w, i), i) == *w)
    }

    pub fn display(&self, w: &GroupWord) -> String {
        if w.is_identity() {
            return "1".into();
        }
        w.letters
            .iter()
            .map(|(x, e)| {
                let base = format!("t({})", self.set.display(x));
                if *e == 1 {
                    base
                } else {
                    format!("{base}^-1")
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}
