//! Finite simplicial sets presented by nondegenerate generators and face
//! tables, with Eilenberg–Zilber normal-form simplex arithmetic.
//!
//! A simplex is stored as a strictly decreasing degeneracy word applied to
//! a nondegenerate generator. Every operation returns this normal form, so
//! simplex equality is plain structural equality.

use serde::Deserialize;
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

pub type GenIdx = usize;

/// A simplex in normal form: `degs` is strictly decreasing and the
/// referenced generator is nondegenerate. `dim = gen_dim + degs.len()`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct SimplexRef {
    pub gen: GenIdx,
    pub degs: Vec<usize>,
    pub dim: usize,
}

impl SimplexRef {
    pub fn generator(gen: GenIdx, dim: usize) -> Self {
        SimplexRef { gen, degs: Vec::new(), dim }
    }

    pub fn is_degenerate(&self) -> bool {
        !self.degs.is_empty()
    }

    /// Dimension of the nondegenerate core, i.e. the skeletal filtration
    /// degree of the simplex.
    pub fn filtration(&self) -> usize {
        self.dim - self.degs.len()
    }
}

/// A weakly increasing map `[m] -> [target]` given by its value list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct IncreasingMap {
    pub values: Vec<usize>,
    pub target: usize,
}

impl IncreasingMap {
    pub fn new(values: Vec<usize>, target: usize) -> Self {
        assert!(!values.is_empty(), "increasing map needs at least one value");
        assert!(
            values.windows(2).all(|w| w[0] <= w[1]) && *values.last().unwrap() <= target,
            "values must be weakly increasing within [0, target]"
        );
        IncreasingMap { values, target }
    }

    pub fn identity(n: usize) -> Self {
        IncreasingMap { values: (0..=n).collect(), target: n }
    }

    /// Source arity `m` (the map is `[m] -> [target]`).
    pub fn source_dim(&self) -> usize {
        self.values.len() - 1
    }

    /// `self ∘ inner`, with `inner: [k] -> [m]`.
    pub fn compose(&self, inner: &IncreasingMap) -> IncreasingMap {
        assert_eq!(
            inner.target,
            self.source_dim(),
            "composition arity mismatch"
        );
        IncreasingMap {
            values: inner.values.iter().map(|&v| self.values[v]).collect(),
            target: self.target,
        }
    }

    /// The injection `[n-1] -> [n]` skipping `i`.
    pub fn coface(n: usize, i: usize) -> Self {
        IncreasingMap {
            values: (0..=n).filter(|&v| v != i).collect(),
            target: n,
        }
    }

    /// The surjection `[n+1] -> [n]` hitting `i` twice.
    pub fn codegeneracy(n: usize, i: usize) -> Self {
        let mut values: Vec<usize> = (0..=n).collect();
        values.insert(i, i);
        IncreasingMap { values, target: n }
    }

    fn first_repeat(&self) -> Option<usize> {
        self.values.windows(2).position(|w| w[0] == w[1])
    }
}

impl fmt::Display for IncreasingMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, v) in self.values.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", v)?;
        }
        write!(f, "]")
    }
}

#[derive(Debug, Error)]
pub enum SpaceError {
    #[error("generator `{generator}` violates d_{i} d_{j} = d_{} d_{i}", j - 1)]
    IdentityViolation { generator: String, i: usize, j: usize },
    #[error("generator `{generator}` is missing face {index}")]
    MissingFace { generator: String, index: usize },
    #[error("unknown generator id `{0}`")]
    UnknownGenerator(String),
    #[error("generator `{generator}`: face {index} has dimension {found}, expected {expected}")]
    FaceDimension { generator: String, index: usize, found: usize, expected: usize },
    #[error("degeneracy word {0:?} is not strictly decreasing or out of range")]
    BadDegeneracyWord(Vec<usize>),
    #[error("simplicial set must be reduced (exactly one 0-dimensional generator), found {0}")]
    NotReduced(usize),
    #[error("basepoint `{0}` must be a 0-dimensional generator")]
    BadBasepoint(String),
    #[error("unknown builtin space `{0}`")]
    UnknownBuiltin(String),
    #[error("declared dimension list {0:?} does not match the generator table")]
    DimensionList(Vec<usize>),
    #[error("space has no generators")]
    Empty,
}

#[derive(Clone, Debug)]
struct Generator {
    name: String,
    dim: usize,
}

/// Raw description of a finite simplicial set, the JSON input schema.
///
/// `faces` lists, for each generator of dimension `n >= 1`, its `n + 1`
/// faces in order `d_0, ..., d_n`, each face written as
/// `[deg_word, generator_id]` with `deg_word` a strictly decreasing list
/// of degeneracy indices.
#[derive(Clone, Debug, Deserialize)]
pub struct SimplicialSetDesc {
    pub dimensions: Vec<usize>,
    pub generators: BTreeMap<String, Vec<String>>,
    pub faces: BTreeMap<String, Vec<(Vec<usize>, String)>>,
    pub basepoint: String,
}

/// A validated finite simplicial set. Immutable after load; all
/// operations are pure, so values can be shared freely across threads.
#[derive(Clone, Debug)]
pub struct SimplicialSet {
    name: String,
    gens: Vec<Generator>,
    by_dim: Vec<Vec<GenIdx>>,
    /// Face table for generators of dimension >= 1, indexed `[gen][i]`.
    faces: Vec<Vec<SimplexRef>>,
    basepoint: GenIdx,
    reduced: bool,
}

impl SimplicialSet {
    pub fn load(desc: &SimplicialSetDesc) -> Result<SimplicialSet, SpaceError> {
        let set = Self::assemble(desc)?;
        set.validate()?;
        Ok(set)
    }

    /// Assemble without checking the simplicial identities. Only negative
    /// controls (deliberately corrupt face tables) should use this.
    pub fn load_unchecked(desc: &SimplicialSetDesc) -> Result<SimplicialSet, SpaceError> {
        Self::assemble(desc)
    }

    fn assemble(desc: &SimplicialSetDesc) -> Result<SimplicialSet, SpaceError> {
        let mut gens = Vec::new();
        let mut index: BTreeMap<&str, GenIdx> = BTreeMap::new();
        let mut dims: Vec<usize> = desc.generators.keys().map(|k| k.parse::<usize>().map_err(|_| SpaceError::DimensionList(desc.dimensions.clone()))).collect::<Result<_, _>>()?;
        dims.sort_unstable();
        let mut declared = desc.dimensions.clone();
        declared.sort_unstable();
        if declared != dims {
            return Err(SpaceError::DimensionList(desc.dimensions.clone()));
        }
        for d in &dims {
            for name in &desc.generators[&d.to_string()] {
                if index.contains_key(name.as_str()) {
                    return Err(SpaceError::UnknownGenerator(format!("duplicate id {name}")));
                }
                index.insert(name.as_str(), gens.len());
                gens.push(Generator { name: name.clone(), dim: *d });
            }
        }
        if gens.is_empty() {
            return Err(SpaceError::Empty);
        }
        let n_zero = gens.iter().filter(|g| g.dim == 0).count();
        let basepoint = *index
            .get(desc.basepoint.as_str())
            .ok_or_else(|| SpaceError::UnknownGenerator(desc.basepoint.clone()))?;
        if gens[basepoint].dim != 0 {
            return Err(SpaceError::BadBasepoint(desc.basepoint.clone()));
        }
        let mut faces = vec![Vec::new(); gens.len()];
        for (gi, g) in gens.iter().enumerate() {
            if g.dim == 0 {
                continue;
            }
            let entries = desc
                .faces
                .get(&g.name)
                .ok_or_else(|| SpaceError::MissingFace { generator: g.name.clone(), index: 0 })?;
            if entries.len() != g.dim + 1 {
                return Err(SpaceError::MissingFace { generator: g.name.clone(), index: entries.len() });
            }
            let mut table = Vec::with_capacity(g.dim + 1);
            for (i, (degs, target)) in entries.iter().enumerate() {
                let tgt = *index
                    .get(target.as_str())
                    .ok_or_else(|| SpaceError::UnknownGenerator(target.clone()))?;
                let dim = gens[tgt].dim + degs.len();
                if dim != g.dim - 1 {
                    return Err(SpaceError::FaceDimension {
                        generator: g.name.clone(),
                        index: i,
                        found: dim,
                        expected: g.dim - 1,
                    });
                }
                let r = SimplexRef { gen: tgt, degs: degs.clone(), dim };
                if !Self::deg_word_ok(&r) {
                    return Err(SpaceError::BadDegeneracyWord(degs.clone()));
                }
                table.push(r);
            }
            faces[gi] = table;
        }
        let max_dim = gens.iter().map(|g| g.dim).max().unwrap_or(0);
        let mut by_dim = vec![Vec::new(); max_dim + 1];
        for (gi, g) in gens.iter().enumerate() {
            by_dim[g.dim].push(gi);
        }
        Ok(SimplicialSet {
            name: "custom".into(),
            gens,
            by_dim,
            faces,
            basepoint,
            reduced: n_zero == 1,
        })
    }

    fn deg_word_ok(r: &SimplexRef) -> bool {
        // each s_j in the word must satisfy j < dimension it produces
        let mut d = r.dim;
        for &j in &r.degs {
            if j >= d {
                return false;
            }
            d -= 1;
        }
        r.degs.windows(2).all(|w| w[0] > w[1])
    }

    fn validate(&self) -> Result<(), SpaceError> {
        for (gi, g) in self.gens.iter().enumerate() {
            if g.dim < 2 {
                continue;
            }
            let x = SimplexRef::generator(gi, g.dim);
            for j in 1..=g.dim {
                for i in 0..j {
                    let lhs = self.face(&self.face(&x, j), i);
                    let rhs = self.face(&self.face(&x, i), j - 1);
                    if lhs != rhs {
                        return Err(SpaceError::IdentityViolation {
                            generator: g.name.clone(),
                            i,
                            j,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Builtin reduced spaces: `sphere(n)`, `circle`, `point`,
    /// `reduced_simplex(n)`, `wedge_of_spheres(dims)`.
    pub fn builtin(name: &str, params: &[usize]) -> Result<SimplicialSet, SpaceError> {
        match (name, params) {
            ("point", []) => Ok(Self::from_parts("point", vec![("pt".into(), 0)], vec![], 0)),
            ("circle", []) => Self::builtin("sphere", &[1]),
            ("sphere", [n]) if *n >= 1 => {
                let gens = vec![("v".into(), 0), ("cell".into(), *n)];
                let faces = vec![(1, (0..=*n).map(|_| base_ref(0, *n - 1)).collect())];
                Ok(Self::from_parts(&format!("sphere({n})"), gens, faces, 0))
            }
            ("wedge_of_spheres", dims) if !dims.is_empty() && dims.iter().all(|&d| d >= 1) => {
                let mut gens = vec![("v".to_string(), 0)];
                let mut faces = Vec::new();
                for (k, &d) in dims.iter().enumerate() {
                    gens.push((format!("cell{k}"), d));
                    faces.push((k + 1, (0..=d).map(|_| base_ref(0, d - 1)).collect()));
                }
                Ok(Self::from_parts("wedge_of_spheres", gens, faces, 0))
            }
            ("reduced_simplex", [n]) if *n >= 1 => Ok(Self::reduced_simplex(*n)),
            _ => Err(SpaceError::UnknownBuiltin(format!("{name}:{params:?}"))),
        }
    }

    /// The n-simplex with its 0-skeleton collapsed to a point:
    /// generators are the strictly increasing vertex tuples of length >= 2.
    fn reduced_simplex(n: usize) -> SimplicialSet {
        let mut tuples: Vec<Vec<usize>> = Vec::new();
        for size in 2..=(n + 1) {
            let mut cur: Vec<usize> = (0..size).collect();
            loop {
                tuples.push(cur.clone());
                // next combination of {0..n} of this size
                let mut i = size;
                loop {
                    if i == 0 {
                        break;
                    }
                    i -= 1;
                    if cur[i] < n + 1 - (size - i) {
                        cur[i] += 1;
                        for j in i + 1..size {
                            cur[j] = cur[j - 1] + 1;
                        }
                        break;
                    }
                    if i == 0 {
                        cur.clear();
                        break;
                    }
                }
                if cur.is_empty() {
                    break;
                }
            }
        }
        let name_of = |t: &[usize]| {
            let digits: Vec<String> = t.iter().map(|v| v.to_string()).collect();
            format!("e{}", digits.join(""))
        };
        let mut gens = vec![("v".to_string(), 0)];
        let mut index: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        for t in &tuples {
            index.insert(t.clone(), gens.len());
            gens.push((name_of(t), t.len() - 1));
        }
        let mut faces = Vec::new();
        for t in &tuples {
            let gi = index[t];
            let mut row = Vec::new();
            for i in 0..t.len() {
                let mut sub = t.clone();
                sub.remove(i);
                if sub.len() == 1 {
                    row.push(SimplexRef::generator(0, 0));
                } else {
                    row.push(SimplexRef::generator(index[&sub], sub.len() - 1));
                }
            }
            faces.push((gi, row));
        }
        Self::from_parts(&format!("reduced_simplex({n})"), gens, faces, 0)
    }

    fn from_parts(
        name: &str,
        gens: Vec<(String, usize)>,
        faces: Vec<(GenIdx, Vec<SimplexRef>)>,
        basepoint: GenIdx,
    ) -> SimplicialSet {
        let gens: Vec<Generator> = gens
            .into_iter()
            .map(|(name, dim)| Generator { name, dim })
            .collect();
        let max_dim = gens.iter().map(|g| g.dim).max().unwrap_or(0);
        let mut by_dim = vec![Vec::new(); max_dim + 1];
        for (gi, g) in gens.iter().enumerate() {
            by_dim[g.dim].push(gi);
        }
        let mut table = vec![Vec::new(); gens.len()];
        for (gi, row) in faces {
            table[gi] = row;
        }
        let n_zero = by_dim[0].len();
        let set = SimplicialSet {
            name: name.to_string(),
            gens,
            by_dim,
            faces: table,
            basepoint,
            reduced: n_zero == 1,
        };
        set.validate().expect("builtin face table must satisfy the simplicial identities");
        set
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn max_gen_dim(&self) -> usize {
        self.by_dim.len() - 1
    }

    pub fn gen_dim(&self, g: GenIdx) -> usize {
        self.gens[g].dim
    }

    pub fn gen_name(&self, g: GenIdx) -> &str {
        &self.gens[g].name
    }

    pub fn generators(&self, dim: usize) -> &[GenIdx] {
        self.by_dim.get(dim).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn gen_count(&self, dim: usize) -> usize {
        self.generators(dim).len()
    }

    pub fn basepoint(&self) -> SimplexRef {
        SimplexRef::generator(self.basepoint, 0)
    }

    /// The basepoint degenerated up to the given dimension.
    pub fn base_at(&self, dim: usize) -> SimplexRef {
        SimplexRef {
            gen: self.basepoint,
            degs: (0..dim).rev().collect(),
            dim,
        }
    }

    pub fn display(&self, x: &SimplexRef) -> String {
        let mut s = String::new();
        for j in &x.degs {
            s.push_str(&format!("s{j} "));
        }
        s.push_str(&self.gens[x.gen].name);
        s
    }

    /// `d_i x`, pushing the face past the degeneracy word before hitting
    /// the face table.
    pub fn face(&self, x: &SimplexRef, i: usize) -> SimplexRef {
        assert!(x.dim >= 1 && i <= x.dim, "face index {i} out of range for dim {}", x.dim);
        if x.degs.is_empty() {
            return self.faces[x.gen][i].clone();
        }
        let j = x.degs[0];
        let inner = SimplexRef {
            gen: x.gen,
            degs: x.degs[1..].to_vec(),
            dim: x.dim - 1,
        };
        if i == j || i == j + 1 {
            inner
        } else if i < j {
            self.degeneracy(&self.face(&inner, i), j - 1)
        } else {
            self.degeneracy(&self.face(&inner, i - 1), j)
        }
    }

    /// `s_i x`; the degeneracy word stays strictly decreasing.
    pub fn degeneracy(&self, x: &SimplexRef, i: usize) -> SimplexRef {
        assert!(i <= x.dim, "degeneracy index {i} out of range for dim {}", x.dim);
        let mut degs = Vec::with_capacity(x.degs.len() + 1);
        let mut placed = false;
        for &j in &x.degs {
            if !placed && i > j {
                degs.push(i);
                placed = true;
            }
            degs.push(if placed { j } else { j + 1 });
        }
        if !placed {
            degs.push(i);
        }
        SimplexRef { gen: x.gen, degs, dim: x.dim + 1 }
    }

    /// Whether `x = s_j y` for some `y`.
    pub fn degenerate_at(&self, x: &SimplexRef, j: usize) -> bool {
        if x.dim == 0 || j + 1 > x.dim {
            return false;
        }
        self.degeneracy(&self.face(x, j), j) == *x
    }

    /// The face of `x` along an increasing map into `[dim x]`, i.e. the
    /// simplex `[f_0, ..., f_m]_x`.
    pub fn apply(&self, x: &SimplexRef, f: &IncreasingMap) -> SimplexRef {
        assert_eq!(f.target, x.dim, "map target must equal the simplex dimension");
        if let Some(p) = f.first_repeat() {
            let mut values = f.values.clone();
            values.remove(p);
            let inner = IncreasingMap { values, target: f.target };
            return self.degeneracy(&self.apply(x, &inner), p);
        }
        // strictly increasing: apply the skipped faces, largest first
        let mut y = x.clone();
        let mut next = f.values.len();
        for v in (0..=f.target).rev() {
            if next > 0 && f.values[next - 1] == v {
                next -= 1;
            } else {
                y = self.face(&y, v);
            }
        }
        y
    }

    /// All simplices of the given dimension (degenerate ones included).
    pub fn simplices(&self, dim: usize) -> Vec<SimplexRef> {
        let mut out = Vec::new();
        for m in 0..=dim.min(self.max_gen_dim()) {
            let extra = dim - m;
            for &g in self.generators(m) {
                for word in decreasing_words(dim, extra) {
                    out.push(SimplexRef { gen: g, degs: word, dim });
                }
            }
        }
        out
    }

    pub fn nondegenerate(&self, dim: usize) -> Vec<SimplexRef> {
        self.generators(dim)
            .iter()
            .map(|&g| SimplexRef::generator(g, dim))
            .collect()
    }
}

fn base_ref(gen: GenIdx, dim: usize) -> SimplexRef {
    SimplexRef { gen, degs: (0..dim).rev().collect(), dim }
}

/// All strictly decreasing words of length `len` over `{0, ..., dim-1}`.
/// These are exactly the normal-form degeneracy words raising a
/// `(dim-len)`-simplex to dimension `dim`.
fn decreasing_words(dim: usize, len: usize) -> Vec<Vec<usize>> {
    if len == 0 {
        return vec![Vec::new()];
    }
    if len > dim {
        return Vec::new();
    }
    // enumerate ascending combinations of {0..dim-1}, emit each reversed
    let mut out = Vec::new();
    let mut asc: Vec<usize> = (0..len).collect();
    loop {
        out.push(asc.iter().rev().copied().collect());
        let mut k = len;
        let mut advanced = false;
        while k > 0 {
            k -= 1;
            if asc[k] < dim - (len - k) {
                asc[k] += 1;
                for j in k + 1..len {
                    asc[j] = asc[j - 1] + 1;
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

#[cfg(test)]
mod tests {
    use super::*;

    fn sphere(n: usize) -> SimplicialSet {
        SimplicialSet::builtin("sphere", &[n]).unwrap()
    }

    #[test]
    fn builtin_counts() {
        let s2 = sphere(2);
        assert_eq!((s2.gen_count(0), s2.gen_count(1), s2.gen_count(2)), (1, 0, 1));
        let c = SimplicialSet::builtin("circle", &[]).unwrap();
        assert_eq!((c.gen_count(0), c.gen_count(1)), (1, 1));
        // oracle: nondegenerate k-simplices of the collapsed n-simplex are
        // the (k+1)-subsets of its vertices
        let binom = |n: usize, k: usize| -> usize {
            let mut r = 1usize;
            for i in 0..k {
                r = r * (n - i) / (i + 1);
            }
            r
        };
        for n in 1..=5 {
            let rs = SimplicialSet::builtin("reduced_simplex", &[n]).unwrap();
            assert_eq!(rs.gen_count(0), 1);
            for k in 1..=n {
                assert_eq!(rs.gen_count(k), binom(n + 1, k + 1), "dim {k} of reduced_simplex({n})");
            }
        }
        let rs3 = SimplicialSet::builtin("reduced_simplex", &[3]).unwrap();
        assert_eq!(
            (rs3.gen_count(0), rs3.gen_count(1), rs3.gen_count(2), rs3.gen_count(3)),
            (1, 6, 4, 1)
        );
    }

    #[test]
    fn face_past_degeneracies() {
        let c = SimplicialSet::builtin("circle", &[]).unwrap();
        let e = c.nondegenerate(1)[0].clone();
        // d_1 s_0 y = y
        assert_eq!(c.face(&c.degeneracy(&e, 0), 1), e);
        // d_0 s_1 y = s_0 d_0 y
        assert_eq!(
            c.face(&c.degeneracy(&e, 1), 0),
            c.degeneracy(&c.face(&e, 0), 0)
        );
        // d_2 of the top cell of the minimal 2-sphere is s_0 v
        let s2 = sphere(2);
        let top = s2.nondegenerate(2)[0].clone();
        assert_eq!(s2.face(&top, 2), s2.degeneracy(&s2.basepoint(), 0));
    }

    #[test]
    fn degeneracy_normal_form() {
        let c = SimplicialSet::builtin("circle", &[]).unwrap();
        let v = c.basepoint();
        let s0v = c.degeneracy(&v, 0);
        assert_eq!(s0v.degs, vec![0]);
        // s_0 s_0 = s_1 s_0
        let s00 = c.degeneracy(&s0v, 0);
        assert_eq!(s00.degs, vec![1, 0]);
        // s_2 s_0 on a 1-simplex is already sorted
        let e = c.nondegenerate(1)[0].clone();
        let x = c.degeneracy(&c.degeneracy(&e, 0), 2);
        assert_eq!(x.degs, vec![2, 0]);
    }

    #[test]
    fn apply_map_factorisation() {
        let rs = SimplicialSet::builtin("reduced_simplex", &[3]).unwrap();
        let x = rs.nondegenerate(2)[0].clone();
        // identity map
        assert_eq!(rs.apply(&x, &IncreasingMap::identity(2)), x);
        // [0,0,1]_x = s_0 d_2 x
        assert_eq!(
            rs.apply(&x, &IncreasingMap::new(vec![0, 0, 1], 2)),
            rs.degeneracy(&rs.face(&x, 2), 0)
        );
        // [1,2]_x = d_0 x
        assert_eq!(
            rs.apply(&x, &IncreasingMap::new(vec![1, 2], 2)),
            rs.face(&x, 0)
        );
    }

    #[test]
    fn apply_map_composition() {
        let rs = SimplicialSet::builtin("reduced_simplex", &[4]).unwrap();
        let x = rs.nondegenerate(3)[1].clone();
        let f = IncreasingMap::new(vec![0, 2, 2, 3], 3);
        let g = IncreasingMap::new(vec![0, 1, 1], 3);
        let fg = f.compose(&g);
        assert_eq!(rs.apply(&x, &fg), rs.apply(&rs.apply(&x, &f), &g));
    }

    #[test]
    fn eilenberg_zilber_cases() {
        // all five d_i s_j cases on every simplex of small spaces
        for set in [
            SimplicialSet::builtin("reduced_simplex", &[3]).unwrap(),
            sphere(2),
        ] {
            for dim in 0..=3usize {
                for x in set.simplices(dim) {
                    for j in 0..=dim {
                        let sx = set.degeneracy(&x, j);
                        for i in 0..=dim + 1 {
                            let lhs = set.face(&sx, i);
                            let rhs = if i < j {
                                set.degeneracy(&set.face(&x, i), j - 1)
                            } else if i == j || i == j + 1 {
                                x.clone()
                            } else {
                                set.degeneracy(&set.face(&x, i - 1), j)
                            };
                            assert_eq!(lhs, rhs);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn simplex_enumeration_counts() {
        // degeneracies of an m-simplex into dimension n are counted by C(n, n-m)
        let s2 = sphere(2);
        assert_eq!(s2.simplices(0).len(), 1);
        assert_eq!(s2.simplices(1).len(), 1);
        assert_eq!(s2.simplices(2).len(), 2); // s1 s0 v and the cell
        assert_eq!(s2.simplices(3).len(), 1 + 3); // base + three degeneracies of the cell
    }

    #[test]
    fn load_rejects_bad_tables() {
        let desc: SimplicialSetDesc = serde_json::from_str(
            r#"{
              "dimensions": [0, 2],
              "generators": {"0": ["v"], "2": ["t"]},
              "faces": {"t": [[[0], "v"], [[0], "v"], [[0], "v"]]},
              "basepoint": "v"
            }"#,
        )
        .unwrap();
        assert!(SimplicialSet::load(&desc).is_ok());

        // a triangle whose faces violate d_0 d_1 t = d_0 d_0 t: the d_1
        // face ends at `v` while the d_0 face ends at `w`
        let bad: SimplicialSetDesc = serde_json::from_str(
            r#"{
              "dimensions": [0, 1, 2],
              "generators": {"0": ["v", "w"], "1": ["a", "b"], "2": ["t"]},
              "faces": {
                "a": [[[], "w"], [[], "v"]],
                "b": [[[], "v"], [[], "v"]],
                "t": [[[], "a"], [[], "b"], [[], "a"]]
              },
              "basepoint": "v"
            }"#,
        )
        .unwrap();
        match SimplicialSet::load(&bad) {
            Err(SpaceError::IdentityViolation { generator, i, j }) => {
                assert_eq!(generator, "t");
                assert_eq!((i, j), (0, 1));
            }
            other => panic!("expected identity violation, got {other:?}"),
        }
    }
}
