//! The permutation-indexed twisting cochain and the shuffle product on
//! group-ring chains.
//!
//! For an `(n+1)`-simplex `x` and a permutation `g` of `{1..n}`, the word
//! `tcx_perm(x, g)` multiplies the letters `tau [0, a_{r1}, ..., a_{rn},
//! r+1]_x` over rows `r = 0..n`, where `a_{rj} = max({0..r} ∩ {0, g_1,
//! ..., g_j})`. Summing over all permutations with alternating signs
//! gives the chain `tc(x)`, and the cochain `phi` adjusts the edge case.
//! Everything here is exact arithmetic on non-normalized chains; a
//! separate normalization pass drops degenerate words.

use crate::chain::Chain;
use crate::loop_group::{GroupWord, LoopGroup};
use crate::simplicial::{IncreasingMap, SimplexRef};

/// Integer chain of reduced group words, all sharing one dimension.
pub type GChain = Chain<GroupWord>;

/// A permutation of `{1..n}` by its value list (1-based).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Permutation {
    vals: Vec<usize>,
}

impl Permutation {
    pub fn new(vals: Vec<usize>) -> Self {
        let n = vals.len();
        let mut seen = vec![false; n + 1];
        for &v in &vals {
            assert!(v >= 1 && v <= n && !seen[v], "not a permutation of 1..{n}");
            seen[v] = true;
        }
        Permutation { vals }
    }

    pub fn identity(n: usize) -> Self {
        Permutation { vals: (1..=n).collect() }
    }

    pub fn n(&self) -> usize {
        self.vals.len()
    }

    pub fn values(&self) -> &[usize] {
        &self.vals
    }

    /// Parity of the inversion count: 0 even, 1 odd.
    pub fn sign(&self) -> u8 {
        let mut inv = 0usize;
        for i in 0..self.vals.len() {
            for j in i + 1..self.vals.len() {
                if self.vals[i] > self.vals[j] {
                    inv += 1;
                }
            }
        }
        (inv % 2) as u8
    }

    pub fn coeff(&self) -> i64 {
        if self.sign() == 0 {
            1
        } else {
            -1
        }
    }

    /// Right multiplication by the transposition of slots `i, i+1`
    /// (1-based slot index).
    pub fn swap_slots(&self, i: usize) -> Permutation {
        let mut vals = self.vals.clone();
        vals.swap(i - 1, i);
        Permutation { vals }
    }
}

/// All permutations of `{1..n}` in lexicographic order of value lists.
pub fn permutations(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (1..=n).collect();
    loop {
        out.push(Permutation { vals: cur.clone() });
        // next lexicographic permutation
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
        if n == 0 {
            break;
        }
    }
    out
}

/// An `(a^p, b^q)`-shuffle: which 1-based positions of the word carry
/// the letter `a`. The sign is the parity of the unshuffle to `b^q a^p`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Shuffle {
    pub a_pos: Vec<usize>,
    pub b_pos: Vec<usize>,
    pub sign: u8,
}

impl Shuffle {
    pub fn coeff(&self) -> i64 {
        if self.sign == 0 {
            1
        } else {
            -1
        }
    }
}

/// All `C(p+q, p)` shuffle words with signs. The sign counts the pairs
/// where an `a` sits above a `b`, since the target word `b^q a^p` puts
/// every `b` above every `a`.
pub fn shuffles(p: usize, q: usize) -> Vec<Shuffle> {
    let total = p + q;
    let mut out = Vec::new();
    let mut choose: Vec<usize> = (1..=p).collect();
    loop {
        let a_pos = choose.clone();
        let b_pos: Vec<usize> = (1..=total).filter(|k| !a_pos.contains(k)).collect();
        let inversions: usize = a_pos
            .iter()
            .map(|&a| b_pos.iter().filter(|&&b| a > b).count())
            .sum();
        out.push(Shuffle { a_pos, b_pos, sign: (inversions % 2) as u8 });
        if p == 0 {
            break;
        }
        let mut k = p;
        let mut advanced = false;
        while k > 0 {
            k -= 1;
            if choose[k] < total - (p - 1 - k) {
                choose[k] += 1;
                for j in k + 1..p {
                    choose[j] = choose[j - 1] + 1;
                }
                advanced = true;
                break;
            }
        }
        if !advanced {
            break;
        }
    }
    out
}

/// Apply the iterated degeneracies `s_{pos-1}` for the given 1-based
/// positions, ascending.
pub fn degenerate_along(lg: &LoopGroup, w: &GroupWord, positions: &[usize]) -> GroupWord {
    let mut out = w.clone();
    for &p in positions {
        out = lg.degeneracy(&out, p - 1);
    }
    out
}

/// The shuffle product on group-ring chains: the left factor takes the
/// `b`-position degeneracies, the right factor the `a`-positions, and
/// the results multiply in the group.
pub fn dot(lg: &LoopGroup, u: &GChain, v: &GChain) -> GChain {
    let mut out = GChain::zero();
    for (wu, cu) in u.iter() {
        for (wv, cv) in v.iter() {
            for sh in shuffles(wu.dim, wv.dim) {
                let left = degenerate_along(lg, wu, &sh.b_pos);
                let right = degenerate_along(lg, wv, &sh.a_pos);
                out.add_term(lg.mul(&left, &right), cu * cv * sh.coeff());
            }
        }
    }
    out
}

/// The matrix row `[0, a_{r1}, ..., a_{rn}, r+1]` for one permutation.
pub fn tcx_row(g: &Permutation, r: usize, n: usize) -> IncreasingMap {
    let mut values = Vec::with_capacity(n + 2);
    values.push(0);
    let mut best = 0usize;
    for j in 0..n {
        let gj = g.values()[j];
        if gj <= r && gj > best {
            best = gj;
        }
        values.push(best);
    }
    values.push(r + 1);
    IncreasingMap::new(values, n + 1)
}

/// `Tcx(g)`: the product over rows of `tau` of the row faces of `x`.
pub fn tcx_perm(lg: &LoopGroup, x: &SimplexRef, g: &Permutation) -> GroupWord {
    let n = x.dim - 1;
    assert_eq!(g.n(), n, "permutation size must match dim(x) - 1");
    lg.from_letters(
        n,
        (0..=n).map(|r| (lg.set.apply(x, &tcx_row(g, r, n)), 1)),
    )
}

/// The signed sum of `Tcx(g)` over all permutations.
pub fn tc(lg: &LoopGroup, x: &SimplexRef) -> GChain {
    assert!(x.dim >= 1, "tc needs a simplex of dimension >= 1");
    let n = x.dim - 1;
    let mut out = GChain::zero();
    for g in permutations(n) {
        out.add_term(tcx_perm(lg, x, &g), g.coeff());
    }
    out
}

/// The twisting cochain: zero on vertices, `tc(x) - 1` on edges, `tc`
/// above.
pub fn phi(lg: &LoopGroup, x: &SimplexRef) -> GChain {
    match x.dim {
        0 => GChain::zero(),
        1 => {
            let mut c = tc(lg, x);
            c.add_term(GroupWord::identity(0), -1);
            c
        }
        _ => tc(lg, x),
    }
}

/// Top face of `Tcx(g)` assembled from the inverse-block product: row
/// `r` contributes `(tau[0, a_{r1}, .., a_{rn}]_x)^{-1} tau[0, a_{r1},
/// .., a_{r(n-1)}, r+1]_x`. Independent of the generic word face.
pub fn top_face_blocks(lg: &LoopGroup, x: &SimplexRef, g: &Permutation) -> GroupWord {
    let n = x.dim - 1;
    assert!(n >= 1);
    assert_eq!(g.n(), n);
    let mut letters = Vec::new();
    for r in 0..=n {
        let full = tcx_row(g, r, n);
        let mut left = full.values.clone();
        left.pop();
        let mut right = full.values.clone();
        right.remove(n);
        letters.push((lg.set.apply(x, &IncreasingMap::new(left, n + 1)), -1));
        letters.push((lg.set.apply(x, &IncreasingMap::new(right, n + 1)), 1));
    }
    lg.from_letters(n - 1, letters)
}

/// `d_i` applied to every word of a chain (exact, non-normalized).
pub fn chain_face(lg: &LoopGroup, c: &GChain, i: usize) -> GChain {
    c.map(|w| lg.face(w, i))
}

pub fn chain_degeneracy(lg: &LoopGroup, c: &GChain, i: usize) -> GChain {
    c.map(|w| lg.degeneracy(w, i))
}

/// Alternating sum of all faces.
pub fn chain_boundary(lg: &LoopGroup, c: &GChain, dim: usize) -> GChain {
    let mut out = GChain::zero();
    for i in 0..=dim {
        out.add_scaled(&chain_face(lg, c, i), if i % 2 == 0 { 1 } else { -1 });
    }
    out
}

/// Drop degenerate words; the homology-facing quotient.
pub fn normalize(lg: &LoopGroup, c: &GChain) -> GChain {
    c.retain(|w| lg.degenerate_at(w).is_none())
}

/// The face `[a..b]_x` (vertex range, inclusive).
pub fn range_face(lg: &LoopGroup, x: &SimplexRef, a: usize, b: usize) -> SimplexRef {
    lg.set.apply(x, &IncreasingMap::new((a..=b).collect(), x.dim))
}

/// `d_i tc(x) = 0` for `0 < i < n`, exactly.
pub fn check_interior_faces(lg: &LoopGroup, x: &SimplexRef) -> Result<(), String> {
    let n = x.dim - 1;
    let c = tc(lg, x);
    for i in 1..n {
        let f = chain_face(lg, &c, i);
        if !f.is_zero() {
            return Err(format!(
                "d_{i} tc({}) has {} surviving terms",
                lg.set.display(x),
                f.len()
            ));
        }
    }
    Ok(())
}

/// `d_0 tc(x) = sum_k (-1)^{k-1} tc([0..k]_x) . tc([k..n+1]_x)`, exactly.
pub fn check_bottom_face_product(lg: &LoopGroup, x: &SimplexRef) -> Result<(), String> {
    let n = x.dim - 1;
    if n == 0 {
        return Ok(());
    }
    let lhs = chain_face(lg, &tc(lg, x), 0);
    let mut rhs = GChain::zero();
    for k in 1..=n {
        let head = tc(lg, &range_face(lg, x, 0, k));
        let tail = tc(lg, &range_face(lg, x, k, n + 1));
        rhs.add_scaled(&dot(lg, &head, &tail), if (k - 1) % 2 == 0 { 1 } else { -1 });
    }
    if lhs == rhs {
        Ok(())
    } else {
        Err(format!("d_0 product formula fails on {}", lg.set.display(x)))
    }
}

/// `(-1)^n d_n tc(x) = sum_k (-1)^k tc(d_k x)`, exactly.
pub fn check_top_face_sum(lg: &LoopGroup, x: &SimplexRef) -> Result<(), String> {
    let n = x.dim - 1;
    if n == 0 {
        return Ok(());
    }
    let lhs = chain_face(lg, &tc(lg, x), n).scaled(if n % 2 == 0 { 1 } else { -1 });
    let mut rhs = GChain::zero();
    for k in 1..=n {
        rhs.add_scaled(&tc(lg, &lg.set.face(x, k)), if k % 2 == 0 { 1 } else { -1 });
    }
    if lhs == rhs {
        Ok(())
    } else {
        Err(format!("d_n face formula fails on {}", lg.set.display(x)))
    }
}

/// Degenerate `x` makes every permutation word degenerate; nondegenerate
/// `x` keeps the identity permutation's word nondegenerate.
pub fn check_degeneracy_lemma(lg: &LoopGroup, x: &SimplexRef) -> Result<(), String> {
    let n = x.dim - 1;
    for g in permutations(n) {
        let w = tcx_perm(lg, x, &g);
        let degenerate = w.is_identity() || lg.degenerate_at(&w).is_some();
        if x.is_degenerate() && !degenerate {
            return Err(format!(
                "Tc({})({:?}) should be degenerate",
                lg.set.display(x),
                g.values()
            ));
        }
    }
    if !x.is_degenerate() {
        let w = tcx_perm(lg, x, &Permutation::identity(n));
        if lg.degenerate_at(&w).is_some() {
            return Err(format!(
                "Tc({})(id) should be nondegenerate",
                lg.set.display(x)
            ));
        }
    }
    Ok(())
}

/// The twisting-cochain identity in the normalized quotient:
/// `d phi(x) = phi(dx) - sum_i (-1)^i phi([0..i]_x) . phi([i..n]_x)`.
pub fn check_cochain_identity(lg: &LoopGroup, x: &SimplexRef) -> Result<(), String> {
    let n = x.dim;
    if n == 0 {
        return Ok(());
    }
    let lhs = if n >= 2 {
        normalize(lg, &chain_boundary(lg, &phi(lg, x), n - 1))
    } else {
        GChain::zero()
    };
    let mut rhs = GChain::zero();
    for i in 0..=n {
        rhs.add_scaled(&phi(lg, &lg.set.face(x, i)), if i % 2 == 0 { 1 } else { -1 });
    }
    for i in 1..n {
        let cup = dot(
            lg,
            &phi(lg, &range_face(lg, x, 0, i)),
            &phi(lg, &range_face(lg, x, i, n)),
        );
        rhs.add_scaled(&cup, if i % 2 == 0 { -1 } else { 1 });
    }
    let rhs = normalize(lg, &rhs);
    if lhs == rhs {
        Ok(())
    } else {
        Err(format!("cochain identity fails on {}", lg.set.display(x)))
    }
}
