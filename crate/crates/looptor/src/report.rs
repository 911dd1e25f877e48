//! Machine- and human-readable verification reports, the verification
//! suites behind `looptor verify`, and input-spec parsing shared by the
//! command line and the integration tests.

use crate::cobar::{Cobar, CobarMonomial};
use crate::homology::{GradedComplex, IntMatrix};
use crate::loop_group::{Convention, LoopGroup};
use crate::prism::PrismCalculus;
use crate::psi;
use crate::simplicial::{SimplexRef, SimplicialSet, SimplicialSetDesc};
use crate::twisted::{
    constant_points, step_twisting, ConstantGroupDesc, GroupAction, SimplicialGroup, TwistDesc,
    Twisting,
};
use crate::twisting::{self, GChain};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use std::time::Instant;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: u32,
    pub suite: String,
    pub status: String,
    pub checks: Vec<CheckResult>,
    pub elapsed_ms: u128,
}

impl Report {
    pub fn new(suite: &str) -> Report {
        Report {
            schema: SCHEMA_VERSION,
            suite: suite.to_string(),
            status: "pass".into(),
            checks: Vec::new(),
            elapsed_ms: 0,
        }
    }

    pub fn push(&mut self, name: impl Into<String>, result: Result<(), String>) {
        let (status, counterexample) = match result {
            Ok(()) => ("pass".to_string(), None),
            Err(e) => {
                self.status = "fail".into();
                ("fail".to_string(), Some(e))
            }
        };
        self.checks.push(CheckResult { name: name.into(), status, counterexample });
    }

    pub fn merge(&mut self, other: Report) {
        if other.status == "fail" {
            self.status = "fail".into();
        }
        self.checks.extend(other.checks);
    }

    pub fn passed(&self) -> bool {
        self.status == "pass"
    }

    pub fn render_text(&self) -> String {
        let mut out = format!("suite {}: {}\n", self.suite, self.status.to_uppercase());
        for c in &self.checks {
            out.push_str(&format!("  [{}] {}\n", c.status, c.name));
            if let Some(ce) = &c.counterexample {
                out.push_str(&format!("        {ce}\n"));
            }
        }
        out
    }

    pub fn render_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Aggregate a list of per-case results into one named check.
fn collect_cases(
    report: &mut Report,
    name: impl Into<String>,
    total: usize,
    results: Vec<Result<(), String>>,
) {
    let name = name.into();
    let failures: Vec<&String> = results.iter().filter_map(|r| r.as_ref().err()).collect();
    if failures.is_empty() {
        report.push(format!("{name} ({total} cases)"), Ok(()));
    } else {
        report.push(
            format!("{name} ({} of {total} cases failed)", failures.len()),
            Err(failures[0].clone()),
        );
    }
}

/// Pseudosection and prism identities on every simplex up to `max_dim`.
pub fn verify_prisms(set: &SimplicialSet, max_dim: usize) -> Report {
    let mut report = Report::new("prisms");
    let p = PrismCalculus::new(set);
    for dim in 1..=max_dim {
        let xs = set.simplices(dim);
        let results: Vec<Result<(), String>> = xs
            .par_iter()
            .map(|x| p.verify_pseudosection(x).map_err(|e| e.to_string()))
            .collect();
        collect_cases(&mut report, format!("pseudosection identities, dim {dim}"), xs.len(), results);
    }
    report
}

fn random_word<'a>(
    lg: &LoopGroup<'a>,
    pool: &[SimplexRef],
    rng: &mut impl Rng,
    dim: usize,
) -> crate::loop_group::GroupWord {
    let len = rng.gen_range(0..4usize);
    lg.from_letters(
        dim,
        (0..len).map(|_| {
            let x = pool[rng.gen_range(0..pool.len())].clone();
            let e = if rng.gen_bool(0.5) { 1 } else { -1 };
            (x, e)
        }),
    )
}

/// All simplicial identities on random words for every convention.
pub fn verify_conventions(set: &SimplicialSet, max_dim: usize, cases: usize, seed: u64) -> Report {
    let mut report = Report::new("conventions");
    let per_conv = cases.div_ceil(Convention::ALL.len());
    for conv in Convention::ALL {
        let lg = LoopGroup::new(set, conv);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ conv as u64);
        let mut failures: Vec<String> = Vec::new();
        for _ in 0..per_conv {
            let dim = rng.gen_range(1..=max_dim);
            let pool = set.simplices(dim + 1);
            let w = random_word(&lg, &pool, &mut rng, dim);
            let n = w.dim;
            if n >= 2 {
                for j in 1..=n {
                    for i in 0..j {
                        if lg.face(&lg.face(&w, j), i) != lg.face(&lg.face(&w, i), j - 1) {
                            failures.push(format!("d_{i} d_{j} on a dim-{n} word"));
                        }
                    }
                }
            }
            for i in 0..=n {
                for j in i..=n {
                    if lg.degeneracy(&lg.degeneracy(&w, j), i)
                        != lg.degeneracy(&lg.degeneracy(&w, i), j + 1)
                    {
                        failures.push(format!("s_{i} s_{j} on a dim-{n} word"));
                    }
                }
            }
            for j in 0..=n {
                let sw = lg.degeneracy(&w, j);
                for i in 0..=n + 1 {
                    let lhs = lg.face(&sw, i);
                    let rhs = if i < j {
                        lg.degeneracy(&lg.face(&w, i), j - 1)
                    } else if i == j || i == j + 1 {
                        w.clone()
                    } else {
                        lg.degeneracy(&lg.face(&w, i - 1), j)
                    };
                    if lhs != rhs {
                        failures.push(format!("d_{i} s_{j} on a dim-{n} word"));
                    }
                }
            }
        }
        if failures.is_empty() {
            report.push(format!("convention {conv}: simplicial identities ({per_conv} words)"), Ok(()));
        } else {
            report.push(
                format!("convention {conv}: {} identity failures", failures.len()),
                Err(failures[0].clone()),
            );
        }
    }
    report
}

/// The exact chain identities of the twisting cochain.
pub fn verify_twisting(set: &SimplicialSet, max_dim: usize) -> Report {
    let mut report = Report::new("twisting");
    let lg = LoopGroup::new(set, Convention::A2B1);
    for dim in 1..=max_dim {
        let xs = set.simplices(dim);
        let run = |f: &(dyn Fn(&SimplexRef) -> Result<(), String> + Sync)| -> Vec<Result<(), String>> {
            xs.par_iter().map(f).collect()
        };
        collect_cases(
            &mut report,
            format!("interior faces of tc vanish, dim {dim}"),
            xs.len(),
            run(&|x| twisting::check_interior_faces(&lg, x)),
        );
        collect_cases(
            &mut report,
            format!("d_0 product formula, dim {dim}"),
            xs.len(),
            run(&|x| twisting::check_bottom_face_product(&lg, x)),
        );
        collect_cases(
            &mut report,
            format!("d_n face formula, dim {dim}"),
            xs.len(),
            run(&|x| twisting::check_top_face_sum(&lg, x)),
        );
        collect_cases(
            &mut report,
            format!("degeneracy lemma, dim {dim}"),
            xs.len(),
            run(&|x| twisting::check_degeneracy_lemma(&lg, x)),
        );
        collect_cases(
            &mut report,
            format!("cochain identity (normalized), dim {dim}"),
            xs.len(),
            run(&|x| twisting::check_cochain_identity(&lg, x)),
        );
    }
    report
}

/// Differential-graded-algebra checks for the cobar construction.
pub fn verify_cobar(set: &SimplicialSet, max_degree: usize) -> Report {
    let mut report = Report::new("cobar");
    let cobar = match Cobar::new(set) {
        Ok(c) => c,
        Err(e) => {
            report.push("cobar construction applies", Err(e.to_string()));
            return report;
        }
    };
    let cap = if set.gen_count(1) > 0 { Some(4) } else { None };
    for degree in 0..=max_degree {
        match cobar.basis(degree, cap) {
            Ok(basis) => {
                let results: Vec<Result<(), String>> = basis
                    .par_iter()
                    .map(|m| {
                        if cobar.diff_chain(&cobar.diff(m)).is_zero() {
                            Ok(())
                        } else {
                            Err(format!("d² ≠ 0 on {}", cobar.label(m)))
                        }
                    })
                    .collect();
                collect_cases(
                    &mut report,
                    format!("d² = 0 in degree {degree}{}", if cap.is_some() { " (capped)" } else { "" }),
                    basis.len(),
                    results,
                );
            }
            Err(e) => report.push(format!("basis in degree {degree}"), Err(e.to_string())),
        }
    }
    // Leibniz on generator pairs
    let gens: Vec<usize> = (1..=set.max_gen_dim().min(3))
        .flat_map(|d| set.generators(d).iter().copied())
        .collect();
    let mut leibniz: Vec<Result<(), String>> = Vec::new();
    for &a in &gens {
        for &b in &gens {
            let m = CobarMonomial(vec![a, b]);
            let lhs = cobar.diff(&m);
            let mut rhs = crate::cobar::CobarChain::zero();
            for (t, k) in cobar.diff(&CobarMonomial::generator(a)).iter() {
                rhs.add_term(t.concat(&CobarMonomial::generator(b)), k);
            }
            let sign = if (set.gen_dim(a) - 1) % 2 == 0 { 1 } else { -1 };
            for (t, k) in cobar.diff(&CobarMonomial::generator(b)).iter() {
                rhs.add_term(CobarMonomial::generator(a).concat(t), sign * k);
            }
            leibniz.push(if lhs == rhs {
                Ok(())
            } else {
                Err(format!("Leibniz fails on {}", cobar.label(&m)))
            });
        }
    }
    collect_cases(&mut report, "graded Leibniz rule on generator pairs", gens.len().pow(2), leibniz);
    // intertwining with the normalized group-ring boundary
    let lg = LoopGroup::new(set, Convention::A2B1);
    let theta = |m: &CobarMonomial| -> GChain {
        let mut acc = GChain::term(crate::loop_group::GroupWord::identity(0), 1);
        for &g in &m.0 {
            let t = twisting::tc(&lg, &SimplexRef::generator(g, set.gen_dim(g)));
            acc = twisting::dot(&lg, &acc, &t);
        }
        acc
    };
    let mut inter: Vec<Result<(), String>> = Vec::new();
    let mut count = 0usize;
    for dim in 2..=set.max_gen_dim().min(4) {
        for &g in set.generators(dim) {
            count += 1;
            let x = SimplexRef::generator(g, dim);
            let lhs = twisting::normalize(
                &lg,
                &twisting::chain_boundary(&lg, &twisting::tc(&lg, &x), dim - 1),
            );
            let mut rhs = GChain::zero();
            for (m, k) in cobar.diff(&CobarMonomial::generator(g)).iter() {
                rhs.add_scaled(&theta(m), -k);
            }
            inter.push(if lhs == twisting::normalize(&lg, &rhs) {
                Ok(())
            } else {
                Err(format!("intertwining fails on c({})", set.gen_name(g)))
            });
        }
    }
    collect_cases(&mut report, "cobar differential matches the group-ring boundary", count, inter);
    report
}

/// Golden formulas, filtration, and the chain-map property of psi.
pub fn verify_psi(set: &SimplicialSet, max_dim: usize) -> Report {
    let mut report = Report::new("psi");
    // displayed low-dimensional formulas, space independent
    let golden: Vec<(usize, Vec<(psi::UTerm, i64)>)> = vec![
        (1, vec![(uterm(&[0, 1], &[]), 1)]),
        (
            2,
            vec![
                (uterm(&[0, 1, 2], &[]), 1),
                (uterm(&[0, 0, 1], &[&[0, 1, 1, 2]]), 1),
            ],
        ),
        (
            3,
            vec![
                (uterm(&[0, 1, 2, 3], &[]), 1),
                (uterm(&[0, 1, 1, 2], &[&[0, 1, 2, 2, 3]]), 1),
                (uterm(&[0, 0, 1, 1], &[&[0, 1, 1, 1, 2], &[0, 1, 1, 2, 3]]), -1),
                (uterm(&[0, 0, 0, 1], &[&[0, 1, 1, 1, 2], &[0, 1, 2, 2, 3]]), 1),
                (uterm(&[0, 0, 1, 2], &[&[0, 2, 2, 2, 3]]), -1),
                (uterm(&[0, 0, 0, 1], &[&[0, 0, 1, 1, 2], &[0, 2, 2, 2, 3]]), -1),
            ],
        ),
    ];
    for (n, terms) in golden {
        let expect: psi::UChain = terms.into_iter().collect();
        report.push(
            format!("psi(x ⊗ 1) matches the dimension-{n} display"),
            if psi::universal_psi(n) == expect {
                Ok(())
            } else {
                Err(format!("computed {:?}", psi::universal_psi(n)))
            },
        );
    }
    // filtration: psi(x ⊗ 1) - (x, 1) sits below the top filtration
    for n in 1..=max_dim.min(4) {
        let c = psi::universal_psi(n);
        let top = uterm(&(0..=n).collect::<Vec<_>>(), &[]);
        let ok = c.coeff(&top) == 1
            && c.iter().all(|(t, _)| {
                *t == top || {
                    let mut v = t.base.clone();
                    v.dedup();
                    v.len() - 1 < n
                }
            });
        report.push(
            format!("psi(x ⊗ 1) = (x, 1) mod lower filtration, dim {n}"),
            if ok { Ok(()) } else { Err("filtration violated".into()) },
        );
    }
    // chain map in the principal twisted product over the given space
    for dim in 1..=max_dim.min(3) {
        let xs = set.simplices(dim);
        let results: Vec<Result<(), String>> = xs
            .par_iter()
            .map(|x| psi::check_principal_chain_map(set, x))
            .collect();
        collect_cases(
            &mut report,
            format!("d psi = psi d in the principal product, dim {dim}"),
            xs.len(),
            results,
        );
    }
    report
}

fn uterm(base: &[usize], letters: &[&[usize]]) -> psi::UTerm {
    psi::UTerm {
        base: base.to_vec(),
        word: psi::from_letters(letters.iter().map(|l| (l.to_vec(), 1))),
    }
}

/// A random three-stage integer complex with prescribed torsion,
/// assembled from unimodular row/column operations so that d∘d = 0
/// holds by construction.
pub fn random_complex(rng: &mut impl Rng) -> GradedComplex {
    let c0 = rng.gen_range(1..=5usize);
    let c1 = rng.gen_range(1..=5usize);
    let c2 = rng.gen_range(1..=5usize);
    let r = rng.gen_range(0..=c1.min(c2));
    // unimodular u with tracked inverse
    let mut u = vec![vec![0i64; c1]; c1];
    let mut uinv = vec![vec![0i64; c1]; c1];
    for i in 0..c1 {
        u[i][i] = 1;
        uinv[i][i] = 1;
    }
    for _ in 0..8 {
        match rng.gen_range(0..3) {
            0 => {
                let i = rng.gen_range(0..c1);
                let j = rng.gen_range(0..c1);
                if i != j {
                    u.swap(i, j);
                    for row in uinv.iter_mut() {
                        row.swap(i, j);
                    }
                }
            }
            1 => {
                let i = rng.gen_range(0..c1);
                let j = rng.gen_range(0..c1);
                let c = rng.gen_range(-2..=2i64);
                if i != j {
                    for k in 0..c1 {
                        u[j][k] += c * u[i][k];
                    }
                    for row in uinv.iter_mut() {
                        row[i] -= c * row[j];
                    }
                }
            }
            _ => {
                let i = rng.gen_range(0..c1);
                for k in 0..c1 {
                    u[i][k] = -u[i][k];
                }
                for row in uinv.iter_mut() {
                    row[i] = -row[i];
                }
            }
        }
    }
    // unimodular v on the right of the rank block
    let mut v = vec![vec![0i64; c2]; c2];
    for i in 0..c2 {
        v[i][i] = 1;
    }
    for _ in 0..8 {
        let i = rng.gen_range(0..c2);
        let j = rng.gen_range(0..c2);
        let c = rng.gen_range(-2..=2i64);
        if i != j {
            for k in 0..c2 {
                let add = c * v[j][k];
                v[i][k] += add;
            }
        }
    }
    let torsion_pool = [1i64, 1, 2, 2, 3, 4, 6];
    let mut d2 = IntMatrix::zero(c1, c2);
    for t in 0..r {
        let d = torsion_pool[rng.gen_range(0..torsion_pool.len())];
        for j in 0..c2 {
            // row t of U times d times row t of V
            for i in 0..c1 {
                d2.add_to(i, j, u[i][t] * d * v[t][j]);
            }
        }
    }
    // d1 kills exactly the complement of the image block
    let mut d1 = IntMatrix::zero(c0, c1);
    for i in 0..c0 {
        for t in r..c1 {
            let e = rng.gen_range(-2..=2i64);
            for j in 0..c1 {
                d1.add_to(i, j, e * uinv[t][j]);
            }
        }
    }
    let bases = vec![
        (0..c0).map(|k| format!("a{k}")).collect(),
        (0..c1).map(|k| format!("b{k}")).collect(),
        (0..c2).map(|k| format!("c{k}")).collect(),
    ];
    GradedComplex::new(bases, vec![IntMatrix::zero(0, c0), d1, d2])
        .expect("construction guarantees d∘d = 0")
}

/// Universal-coefficient cross-check: mod-p homology dimensions agree
/// with Betti numbers plus p-torsion counts from the Smith form.
pub fn modp_consistency(c: &GradedComplex, primes: &[i64]) -> Result<(), String> {
    for k in 0..=c.max_degree() {
        let h = c.homology(k);
        let below = if k > 0 { c.homology(k - 1) } else { crate::homology::HomologyGroup::free(0) };
        for &p in primes {
            let lhs = c.modp_homology_dim(k, p);
            let t = h
                .torsion
                .iter()
                .filter(|f| (*f % num_bigint::BigInt::from(p)) == num_bigint::BigInt::from(0))
                .count();
            let t_below = below
                .torsion
                .iter()
                .filter(|f| (*f % num_bigint::BigInt::from(p)) == num_bigint::BigInt::from(0))
                .count();
            let rhs = h.betti + t + t_below;
            if lhs != rhs {
                return Err(format!(
                    "H_{k} mod {p}: rank route gives {lhs}, Smith route gives {rhs}"
                ));
            }
        }
    }
    Ok(())
}

/// Smith normal form versus mod-p ranks on random complexes.
pub fn verify_homology(cases: usize, seed: u64) -> Report {
    let mut report = Report::new("homology");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let complexes: Vec<GradedComplex> = (0..cases).map(|_| random_complex(&mut rng)).collect();
    let results: Vec<Result<(), String>> = complexes
        .par_iter()
        .map(|c| modp_consistency(c, &[2, 3, 5]))
        .collect();
    collect_cases(
        &mut report,
        "Smith form agrees with mod-p ranks (p = 2, 3, 5)",
        cases,
        results,
    );
    report
}

pub struct SuiteOptions {
    pub max_dim: usize,
    pub cases: usize,
    pub seed: u64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { max_dim: 3, cases: 1000, seed: 0x100f }
    }
}

/// Run one named suite (or `all`) against a space.
pub fn run_suite(name: &str, set: &SimplicialSet, opts: &SuiteOptions) -> Result<Report, String> {
    let start = Instant::now();
    let mut report = match name {
        "prisms" => verify_prisms(set, opts.max_dim),
        "conventions" => verify_conventions(set, opts.max_dim, opts.cases, opts.seed),
        "twisting" => verify_twisting(set, opts.max_dim),
        "cobar" => verify_cobar(set, opts.max_dim),
        "psi" => verify_psi(set, opts.max_dim),
        "homology" => verify_homology(opts.cases.min(200), opts.seed),
        "all" => {
            let mut r = Report::new("all");
            r.merge(verify_prisms(set, opts.max_dim));
            r.merge(verify_conventions(set, opts.max_dim, opts.cases, opts.seed));
            r.merge(verify_twisting(set, opts.max_dim));
            r.merge(verify_cobar(set, opts.max_dim));
            r.merge(verify_psi(set, opts.max_dim));
            r.merge(verify_homology(opts.cases.min(100), opts.seed));
            r
        }
        other => return Err(format!("unknown suite `{other}`")),
    };
    report.elapsed_ms = start.elapsed().as_millis();
    Ok(report)
}

/// Parse a space spec: `builtin:<name>[:params]` or a JSON file path.
pub fn load_space(spec: &str) -> Result<SimplicialSet, String> {
    if let Some(rest) = spec.strip_prefix("builtin:") {
        let mut parts = rest.split(':');
        let name = parts.next().unwrap().replace('-', "_");
        let params: Vec<usize> = match parts.next() {
            None => Vec::new(),
            Some(p) => p
                .split(',')
                .map(|v| v.parse::<usize>().map_err(|e| format!("bad parameter `{v}`: {e}")))
                .collect::<Result<_, _>>()?,
        };
        if name == "points" {
            let m = *params.first().ok_or("builtin:points needs a count")?;
            return Ok(constant_points(m));
        }
        return SimplicialSet::builtin(&name, &params).map_err(|e| e.to_string());
    }
    let data = std::fs::read_to_string(spec).map_err(|e| format!("cannot read {spec}: {e}"))?;
    let desc: SimplicialSetDesc =
        serde_json::from_str(&data).map_err(|e| format!("{spec}: {e}"))?;
    SimplicialSet::load(&desc).map_err(|e| e.to_string())
}

/// Parse a group spec: `builtin:cyclic:m`, `builtin:trivial`, or a JSON
/// file with a constant group table.
pub fn load_group(spec: &str, max_dim: usize) -> Result<SimplicialGroup, String> {
    if let Some(rest) = spec.strip_prefix("builtin:") {
        let mut parts = rest.split(':');
        return match parts.next().unwrap() {
            "cyclic" => {
                let m: usize = parts
                    .next()
                    .ok_or("builtin:cyclic needs an order")?
                    .parse()
                    .map_err(|e| format!("bad order: {e}"))?;
                Ok(SimplicialGroup::cyclic(m, max_dim))
            }
            "trivial" => Ok(SimplicialGroup::trivial(max_dim)),
            other => Err(format!("unknown builtin group `{other}`")),
        };
    }
    let data = std::fs::read_to_string(spec).map_err(|e| format!("cannot read {spec}: {e}"))?;
    let desc: ConstantGroupDesc =
        serde_json::from_str(&data).map_err(|e| format!("{spec}: {e}"))?;
    desc.build(max_dim).map_err(|e| e.to_string())
}

/// Parse a twist spec: `trivial`, `step`, or a JSON file of values.
pub fn load_twist(
    spec: &str,
    set: &SimplicialSet,
    grp: &SimplicialGroup,
) -> Result<Twisting, String> {
    match spec {
        "trivial" => Ok(Twisting::trivial(set, grp)),
        "step" => step_twisting(set, grp).map_err(|e| e.to_string()),
        path => {
            let data =
                std::fs::read_to_string(path).map_err(|e| format!("cannot read {path}: {e}"))?;
            let desc: TwistDesc = serde_json::from_str(&data).map_err(|e| format!("{path}: {e}"))?;
            Twisting::from_desc(&desc, set, grp).map_err(|e| e.to_string())
        }
    }
}

/// Choose the action: explicit `trivial`/`translation`, or `auto`, which
/// translates when the group order matches a constant fiber.
pub fn load_action(
    spec: &str,
    grp: &SimplicialGroup,
    fiber: &SimplicialSet,
    max_dim: usize,
) -> Result<GroupAction, String> {
    match spec {
        "trivial" => Ok(GroupAction::trivial(grp, fiber, max_dim)),
        "translation" => GroupAction::translation(grp, fiber, max_dim).map_err(|e| e.to_string()),
        "auto" => {
            if fiber.max_gen_dim() == 0 && grp.size(0) == fiber.gen_count(0) {
                GroupAction::translation(grp, fiber, max_dim).map_err(|e| e.to_string())
            } else {
                Ok(GroupAction::trivial(grp, fiber, max_dim))
            }
        }
        other => Err(format!("unknown action `{other}`")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_pass_on_the_reduced_simplex() {
        let set = load_space("builtin:reduced-simplex:3").unwrap();
        let opts = SuiteOptions { max_dim: 3, cases: 80, seed: 7 };
        for suite in ["prisms", "conventions", "twisting", "psi", "homology"] {
            let r = run_suite(suite, &set, &opts).unwrap();
            assert!(r.passed(), "suite {suite} failed:\n{}", r.render_text());
        }
    }

    #[test]
    fn cobar_suite_passes_on_spheres() {
        let set = load_space("builtin:sphere:2").unwrap();
        let r = run_suite("cobar", &set, &SuiteOptions { max_dim: 4, ..Default::default() }).unwrap();
        assert!(r.passed(), "{}", r.render_text());
    }

    #[test]
    fn report_json_is_deterministic() {
        let set = load_space("builtin:sphere:2").unwrap();
        let opts = SuiteOptions { max_dim: 2, cases: 10, seed: 42 };
        let mut a = run_suite("twisting", &set, &opts).unwrap();
        let mut b = run_suite("twisting", &set, &opts).unwrap();
        a.elapsed_ms = 0;
        b.elapsed_ms = 0;
        assert_eq!(a.render_json(), b.render_json());
    }

    #[test]
    fn random_complexes_are_complexes() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..50 {
            let c = random_complex(&mut rng);
            modp_consistency(&c, &[2, 3, 5]).unwrap();
        }
    }

    #[test]
    fn spec_parsing() {
        assert!(load_space("builtin:sphere:3").is_ok());
        assert!(load_space("builtin:wedge-of-spheres:2,2").is_ok());
        assert!(load_space("builtin:nope").is_err());
        assert!(load_group("builtin:cyclic:4", 3).is_ok());
        assert!(load_group("builtin:nope", 3).is_err());
    }
}
