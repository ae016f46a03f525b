//! Exhaustive verification drivers. Each returns a [`Report`] whose text is a
//! deterministic function of its arguments, whatever the [`Exec`] strategy.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::{BigInt, BigUint};
use serde::Serialize;

use crate::callan::CallanSequence;
use crate::counting::{egf_gamma_free, factorial, omega_numbers, poly_bernoulli, Monomial};
use crate::enumerate::{
    complete_naf_by_eta, count_gamma_free, enumerate_callan, enumerate_gamma_free_with,
    enumerate_increasing_forests, enumerate_point_forests, no_common_rise_by_eta, permutations,
    GammaMode, PointForestKind, CALLAN_LIMIT, FOREST_LIMIT, PERMUTATION_LIMIT, PRUNED_CELL_LIMIT,
};
use crate::error::{Error, Result};
use crate::gamma::is_gamma_free;
use crate::matrix::BinaryMatrix;
use crate::par::Exec;
use crate::phi::{phi, phi_inverse};
use crate::pi::{pi, pi_inverse};
use crate::psi::{
    f_convert, f_inverse, is_leftmost_valid, is_properly_labeled, matrix_to_pair, pair_to_matrix,
    psi, psi_inverse, PointForest,
};

/// Largest table edge accepted by [`verify_table1`] and [`verify_egf`].
pub const TABLE_LIMIT: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub check: String,
    pub input: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub target: String,
    pub summary: String,
    pub checks: Vec<Check>,
    pub counterexample: Option<Counterexample>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.summary)?;
        for c in &self.checks {
            writeln!(f, "  [{}] {}", if c.passed { "ok" } else { "FAIL" }, c.name)?;
        }
        if let Some(cx) = &self.counterexample {
            writeln!(f, "counterexample ({}):", cx.check)?;
            for line in cx.input.lines() {
                writeln!(f, "  {line}")?;
            }
            writeln!(f, "  {}", cx.detail)?;
        }
        Ok(())
    }
}

/// Accumulates checks, keeping only the first counterexample.
struct Builder {
    target: String,
    checks: Vec<Check>,
    counterexample: Option<Counterexample>,
}

impl Builder {
    fn new(target: impl Into<String>) -> Self {
        Builder {
            target: target.into(),
            checks: Vec::new(),
            counterexample: None,
        }
    }

    fn check(&mut self, name: impl Into<String>, failure: Option<(String, String)>) -> bool {
        let name = name.into();
        let passed = failure.is_none();
        if let (Some((input, detail)), None) = (failure, &self.counterexample) {
            self.counterexample = Some(Counterexample {
                check: name.clone(),
                input,
                detail,
            });
        }
        self.checks.push(Check { name, passed });
        passed
    }

    fn equal<T: PartialEq + fmt::Display>(&mut self, name: impl Into<String>, got: T, want: T) -> bool {
        let failure = (got != want).then(|| (String::new(), format!("got {got}, expected {want}")));
        self.check(name, failure)
    }

    fn all_ok(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn finish(self, summary: String) -> Report {
        Report {
            target: self.target,
            summary,
            checks: self.checks,
            counterexample: self.counterexample,
        }
    }
}

fn verdict(ok: bool, what: &str) -> &'static str {
    match (ok, what) {
        (true, "round-trips") => "all round-trips OK",
        (true, _) => "all checks OK",
        (false, _) => "FAILED",
    }
}

fn show<T: fmt::Debug>(x: &T) -> String {
    format!("{x:?}")
}

fn first_duplicate<T: Ord + Clone>(items: &[T]) -> Option<T> {
    let mut seen = BTreeSet::new();
    items.iter().find(|x| !seen.insert(*x)).cloned()
}

/// Exhaustive check that `phi` is a bijection from Γ-free `n x k` matrices
/// onto `(n, k)`-Callan sequences with inverse `phi_inverse`.
pub fn verify_phi_bijective(n: usize, k: usize, exec: Exec) -> Result<Report> {
    if n > CALLAN_LIMIT || k > CALLAN_LIMIT || n * k > PRUNED_CELL_LIMIT {
        return Err(Error::SizeLimit {
            family: "phi verification",
            limit: format!("n, k <= {CALLAN_LIMIT}"),
            requested: format!("({n},{k})"),
        });
    }
    let mut b = Builder::new(format!("phi n={n} k={k}"));
    let matrices = enumerate_gamma_free_with(n, k, GammaMode::Pruned, exec)?;
    let sequences = enumerate_callan(n, k)?;
    let expected = poly_bernoulli(n, k);
    b.equal("matrix count equals B_n^(-k)", BigUint::from(matrices.len()), expected.clone());
    b.equal("sequence count equals B_n^(-k)", BigUint::from(sequences.len()), expected);

    let images: Vec<Result<CallanSequence>> = exec.map(&matrices, phi);
    let bad = matrices.iter().zip(&images).find_map(|(m, s)| match s {
        Err(e) => Some((m.render(), format!("phi failed: {e}"))),
        Ok(s) if phi_inverse(s) != *m => Some((
            m.render(),
            format!("phi gives {}, phi_inverse gives back\n{}", s.to_json(), phi_inverse(s).render()),
        )),
        Ok(_) => None,
    });
    b.check("phi_inverse(phi(m)) = m for every matrix", bad);

    let ok_images: Vec<CallanSequence> = images.into_iter().filter_map(|s| s.ok()).collect();
    let dup = first_duplicate(&ok_images).map(|s| (s.to_json(), "image of two matrices".to_string()));
    b.check("phi is injective", dup);

    let bad = exec.find_first(&sequences, |s| {
        let m = phi_inverse(s);
        if !is_gamma_free(&m) {
            return Some((s.to_json(), format!("phi_inverse output contains a Γ\n{}", m.render())));
        }
        match phi(&m) {
            Ok(back) if back == *s => None,
            Ok(back) => Some((s.to_json(), format!("phi(phi_inverse(s)) = {}", back.to_json()))),
            Err(e) => Some((s.to_json(), format!("phi failed: {e}"))),
        }
    });
    b.check("phi(phi_inverse(s)) = s for every sequence", bad);

    let ok = b.all_ok();
    let summary = format!(
        "{} matrices, {} sequences, {}",
        matrices.len(),
        sequences.len(),
        verdict(ok, "round-trips")
    );
    Ok(b.finish(summary))
}

/// Exhaustive check that `pi` is a bijection from increasing forests on
/// `{1..n}` onto permutations of `{1..n}`.
pub fn verify_pi(n: usize, exec: Exec) -> Result<Report> {
    if n > FOREST_LIMIT {
        return Err(Error::SizeLimit {
            family: "pi verification",
            limit: format!("n <= {FOREST_LIMIT}"),
            requested: n.to_string(),
        });
    }
    let mut b = Builder::new(format!("pi n={n}"));
    let labels: Vec<usize> = (1..=n).collect();
    let forests = enumerate_increasing_forests(&labels)?;
    let perms = permutations(n);
    let fact = factorial(n);
    b.equal("forest count equals n!", BigUint::from(forests.len()), fact.clone());
    b.equal("permutation count equals n!", BigUint::from(perms.len()), fact);

    let images: Vec<Result<Vec<usize>>> = exec.map(&forests, pi);
    let bad = forests.iter().zip(&images).find_map(|(f, s)| match s {
        Err(e) => Some((show(f), format!("pi failed: {e}"))),
        Ok(s) => match pi_inverse(s) {
            Ok(back) if back == *f => None,
            Ok(back) => Some((show(f), format!("pi gives {s:?}, pi_inverse gives {back:?}"))),
            Err(e) => Some((show(f), format!("pi_inverse failed: {e}"))),
        },
    });
    b.check("pi_inverse(pi(f)) = f for every forest", bad);
    let ok_images: Vec<Vec<usize>> = images.into_iter().filter_map(|s| s.ok()).collect();
    let dup = first_duplicate(&ok_images).map(|s| (show(&s), "image of two forests".to_string()));
    b.check("pi is injective", dup);

    let bad = exec.find_first(&perms, |s| match pi_inverse(s).and_then(|f| pi(&f)) {
        Ok(back) if back == *s => None,
        Ok(back) => Some((show(s), format!("pi(pi_inverse(s)) = {back:?}"))),
        Err(e) => Some((show(s), e.to_string())),
    });
    b.check("pi(pi_inverse(s)) = s for every permutation", bad);

    let ok = b.all_ok();
    let summary = format!("{} forests, {} permutations, {}", forests.len(), perms.len(), verdict(ok, "round-trips"));
    Ok(b.finish(summary))
}

fn check_permutation_size(family: &'static str, n: usize) -> Result<()> {
    if n > PERMUTATION_LIMIT {
        return Err(Error::SizeLimit {
            family,
            limit: format!("n <= {PERMUTATION_LIMIT}"),
            requested: n.to_string(),
        });
    }
    Ok(())
}

/// Leftmost-valid trees on `P_eta` found by exhaustive search, keyed by their
/// image under `f_convert`.
fn brute_inverse_table(eta: &[usize]) -> Result<BTreeMap<PointForest, Vec<PointForest>>> {
    let mut table: BTreeMap<PointForest, Vec<PointForest>> = BTreeMap::new();
    for t in enumerate_point_forests(eta, PointForestKind::LeftmostValid)? {
        if t.roots().len() == 1 {
            table.entry(f_convert(&t)?).or_default().push(t);
        }
    }
    Ok(table)
}

struct EtaOutcome {
    leftmost: usize,
    proper: usize,
    failures: Vec<(String, Option<(String, String)>)>,
}

fn check_psi_for_eta(eta: &[usize]) -> Result<EtaOutcome> {
    let leftmost = enumerate_point_forests(eta, PointForestKind::LeftmostValid)?;
    let proper = enumerate_point_forests(eta, PointForestKind::ProperlyLabeled)?;
    let proper_set: BTreeSet<&PointForest> = proper.iter().collect();
    let ctx = |f: &PointForest| format!("eta={eta:?} {f:?}");
    let mut failures = Vec::new();

    let mut images = BTreeSet::new();
    let mut bad = None;
    for f in &leftmost {
        let outcome = psi(f).and_then(|g| {
            if !is_properly_labeled(&g) {
                return Ok(Some(format!("psi gives {g:?}, not properly labeled")));
            }
            if g.vertices().collect::<Vec<_>>() != f.vertices().collect::<Vec<_>>()
                || g.roots().len() != f.roots().len()
            {
                return Ok(Some(format!("psi gives {g:?}, vertex set or component count differs")));
            }
            let back = psi_inverse(&g)?;
            if back != *f {
                return Ok(Some(format!("psi gives {g:?}, psi_inverse gives {back:?}")));
            }
            if !images.insert(g) {
                return Ok(Some("psi is not injective here".to_string()));
            }
            Ok(None)
        });
        match outcome {
            Ok(None) => {}
            Ok(Some(detail)) => bad = bad.or(Some((ctx(f), detail))),
            Err(e) => bad = bad.or(Some((ctx(f), e.to_string()))),
        }
    }
    failures.push(("psi_inverse(psi(f)) = f, psi(f) properly labeled".to_string(), bad));

    let surjective = proper_set
        .iter()
        .find(|g| !images.contains(**g))
        .map(|g| (ctx(g), "not in the image of psi".to_string()));
    failures.push(("psi maps onto the properly labeled forests".to_string(), surjective));

    let mut bad = None;
    for g in &proper {
        match psi_inverse(g) {
            Ok(f) if !is_leftmost_valid(&f) => {
                bad = bad.or(Some((ctx(g), format!("psi_inverse gives {f:?}, not leftmost-valid"))))
            }
            Ok(f) => match psi(&f) {
                Ok(back) if back == *g => {}
                Ok(back) => bad = bad.or(Some((ctx(g), format!("psi(psi_inverse(g)) = {back:?}")))),
                Err(e) => bad = bad.or(Some((ctx(g), e.to_string()))),
            },
            Err(e) => bad = bad.or(Some((ctx(g), e.to_string()))),
        }
    }
    failures.push(("psi(psi_inverse(g)) = g, psi_inverse(g) leftmost-valid".to_string(), bad));

    let mut bad = None;
    for t in leftmost.iter().filter(|t| t.roots().len() == 1) {
        match f_convert(t) {
            Ok(g) if g.roots() != t.roots() => {
                bad = bad.or(Some((ctx(t), format!("f_convert moves the root: {g:?}"))))
            }
            Ok(_) => {}
            Err(e) => bad = bad.or(Some((ctx(t), e.to_string()))),
        }
    }
    failures.push(("f_convert preserves the root".to_string(), bad));

    let table = brute_inverse_table(eta)?;
    let mut bad = None;
    for g in proper.iter().filter(|g| g.roots().len() == 1) {
        let detail = match (table.get(g).map(Vec::as_slice), f_inverse(g)) {
            (Some([t]), Ok(inv)) if inv == *t => continue,
            (Some([t]), Ok(inv)) => format!("f_inverse gives {inv:?}, search finds {t:?}"),
            (Some(ts), _) if ts.len() > 1 => format!("{} leftmost-valid preimages", ts.len()),
            (_, Err(e)) => format!("f_inverse failed: {e}"),
            _ => "no leftmost-valid preimage".to_string(),
        };
        bad = bad.or(Some((ctx(g), detail)));
    }
    failures.push(("f_inverse agrees with exhaustive search".to_string(), bad));

    Ok(EtaOutcome {
        leftmost: leftmost.len(),
        proper: proper.len(),
        failures,
    })
}

/// Exhaustive check of `psi`, `f_convert` and `f_inverse` on every point set
/// `P_eta`, `eta` a permutation of `{1..n}`.
pub fn verify_psi(n: usize, exec: Exec) -> Result<Report> {
    check_permutation_size("psi verification", n)?;
    let mut b = Builder::new(format!("psi n={n}"));
    let etas = permutations(n);
    let outcomes: Result<Vec<EtaOutcome>> = exec.map(&etas, |eta| check_psi_for_eta(eta)).into_iter().collect();
    let outcomes = outcomes?;
    let mut merged: Vec<(String, Option<(String, String)>)> = Vec::new();
    for o in &outcomes {
        for (i, (name, failure)) in o.failures.iter().enumerate() {
            if merged.len() <= i {
                merged.push((name.clone(), None));
            }
            if merged[i].1.is_none() {
                merged[i].1 = failure.clone();
            }
        }
    }
    let leftmost: usize = outcomes.iter().map(|o| o.leftmost).sum();
    let proper: usize = outcomes.iter().map(|o| o.proper).sum();
    b.equal("forest counts agree", leftmost, proper);
    for (name, failure) in merged {
        b.check(name, failure);
    }
    let ok = b.all_ok();
    let summary = format!(
        "{} point sets, {leftmost} leftmost-valid forests, {proper} properly labeled forests, {}",
        etas.len(),
        verdict(ok, "round-trips")
    );
    Ok(b.finish(summary))
}

/// Exhaustive check that `matrix_to_pair` and `pair_to_matrix` are inverse
/// bijections between complete non-ambiguous forests with leaf set `P_eta`
/// and pairs with no common rise on `P_eta`, for every `eta`.
pub fn verify_theorem5(n: usize, exec: Exec) -> Result<Report> {
    check_permutation_size("theorem 5 verification", n)?;
    let mut b = Builder::new(format!("theorem5 n={n}"));
    let forests = complete_naf_by_eta(n)?;
    let pairs = no_common_rise_by_eta(n)?;
    let etas = permutations(n);

    let bad = etas.iter().find_map(|eta| {
        let c = forests.get(eta).map_or(0, Vec::len);
        let p = pairs.get(eta).map_or(0, Vec::len);
        (c != p).then(|| (format!("eta={eta:?}"), format!("{c} forests, {p} pairs")))
    });
    b.check("|C(eta)| = |P(eta)| for every eta", bad);

    let matrices: Vec<&BinaryMatrix> = forests.values().flatten().collect();
    let bad = exec.find_first(&matrices, |m| match matrix_to_pair(m) {
        Err(e) => Some((m.render(), format!("matrix_to_pair failed: {e}"))),
        Ok(p) if p.first_common_rise().is_some() => Some((m.render(), format!("pair has a common rise\n{}", p.render()))),
        Ok(p) if p.eta() != crate::psi::leaf_permutation(m) => {
            Some((m.render(), format!("pair lives on another point set\n{}", p.render())))
        }
        Ok(p) => match pair_to_matrix(&p) {
            Ok(back) if back == **m => None,
            Ok(back) => Some((m.render(), format!("round-trip gives\n{}", back.render()))),
            Err(e) => Some((m.render(), format!("pair_to_matrix failed: {e}"))),
        },
    });
    b.check("pair_to_matrix(matrix_to_pair(m)) = m", bad);

    let all_pairs: Vec<_> = pairs.values().flatten().collect();
    let bad = exec.find_first(&all_pairs, |p| match pair_to_matrix(p) {
        Err(e) => Some((p.render(), format!("pair_to_matrix failed: {e}"))),
        Ok(m) if !crate::gamma::is_complete_naf(&m) => {
            Some((p.render(), format!("not a complete non-ambiguous forest\n{}", m.render())))
        }
        Ok(m) => match matrix_to_pair(&m) {
            Ok(back) if back == **p => None,
            Ok(back) => Some((p.render(), format!("round-trip gives\n{}", back.render()))),
            Err(e) => Some((p.render(), format!("matrix_to_pair failed: {e}"))),
        },
    });
    b.check("matrix_to_pair(pair_to_matrix(p)) = p", bad);

    let tau = matrices.len();
    let omega = all_pairs.len();
    let series = omega_numbers(n)[n].clone();
    b.equal("tau(n) = omega(n)", tau, omega);
    b.equal("omega(n) equals the series coefficient", BigInt::from(omega), series);

    let ok = b.all_ok();
    let summary = format!("tau({n}) = {tau}, omega({n}) = {omega}, {}", verdict(ok, "round-trips"));
    Ok(b.finish(summary))
}

fn check_table_size(family: &'static str, max_n: usize, max_k: usize) -> Result<()> {
    if max_n > TABLE_LIMIT || max_k > TABLE_LIMIT {
        return Err(Error::SizeLimit {
            family,
            limit: format!("max-n, max-k <= {TABLE_LIMIT}"),
            requested: format!("({max_n},{max_k})"),
        });
    }
    Ok(())
}

/// Checks the poly-Bernoulli formula against Γ-free and Callan enumeration
/// wherever exhaustive enumeration is within limits.
pub fn verify_table1(max_n: usize, max_k: usize, exec: Exec) -> Result<Report> {
    check_table_size("table verification", max_n, max_k)?;
    let mut b = Builder::new(format!("table1 max-n={max_n} max-k={max_k}"));
    let cells: Vec<(usize, usize)> = (0..=max_n).flat_map(|n| (0..=max_k).map(move |k| (n, k))).collect();
    let mut bad_matrix = None;
    let mut bad_callan = None;
    let mut bad_symmetry = None;
    let mut enumerated = 0;
    for &(n, k) in &cells {
        let value = poly_bernoulli(n, k);
        if value != poly_bernoulli(k, n) {
            bad_symmetry = bad_symmetry.or(Some((format!("({n},{k})"), "B_n^(-k) != B_k^(-n)".to_string())));
        }
        if n * k <= PRUNED_CELL_LIMIT {
            enumerated += 1;
            let count = BigUint::from(count_gamma_free(n, k, exec)?);
            if count != value {
                bad_matrix = bad_matrix.or(Some((format!("({n},{k})"), format!("{count} matrices, formula {value}"))));
            }
        }
        if n <= CALLAN_LIMIT && k <= CALLAN_LIMIT {
            let count = BigUint::from(enumerate_callan(n, k)?.len());
            if count != value {
                bad_callan = bad_callan.or(Some((format!("({n},{k})"), format!("{count} sequences, formula {value}"))));
            }
        }
    }
    b.check("B_n^(-k) counts Γ-free matrices", bad_matrix);
    b.check("B_n^(-k) counts Callan sequences", bad_callan);
    b.check("B_n^(-k) is symmetric", bad_symmetry);
    let ok = b.all_ok();
    let summary = format!(
        "{} entries, {enumerated} checked by enumeration, {}",
        cells.len(),
        verdict(ok, "checks")
    );
    Ok(b.finish(summary))
}

/// Number of Γ-free matrices of each size by (top rows, empty rows, empty columns).
pub fn statistics_histogram(matrices: &[BinaryMatrix]) -> BTreeMap<Monomial, u64> {
    let mut hist = BTreeMap::new();
    for m in matrices {
        let s = m.stats();
        *hist
            .entry(Monomial::new(s.empty_rows as u32, s.empty_cols as u32, s.top_rows as u32))
            .or_insert(0) += 1;
    }
    hist
}

/// Checks the truncated generating function against the poly-Bernoulli
/// formula and, for `n k <= 16`, against enumeration with statistics.
pub fn verify_egf(max_n: usize, max_k: usize, exec: Exec) -> Result<Report> {
    check_table_size("generating function verification", max_n, max_k)?;
    let mut b = Builder::new(format!("egf max-n={max_n} max-k={max_k}"));
    let table = egf_gamma_free(max_n, max_k);
    let mut bad_total = None;
    let mut bad_refined = None;
    let mut refined_cells = 0;
    for n in 0..=max_n {
        for k in 0..=max_k {
            let total = table.total(n, k);
            let want = poly_bernoulli(n, k);
            if total != want {
                bad_total = bad_total.or(Some((format!("({n},{k})"), format!("series {total}, formula {want}"))));
            }
            if n * k > 16 {
                continue;
            }
            refined_cells += 1;
            let hist = statistics_histogram(&enumerate_gamma_free_with(n, k, GammaMode::Pruned, exec)?);
            let series: BTreeMap<Monomial, BigInt> = table.entry(n, k).terms().clone();
            let enumerated: BTreeMap<Monomial, BigInt> = hist.into_iter().map(|(m, c)| (m, BigInt::from(c))).collect();
            if series != enumerated {
                let diff = series
                    .keys()
                    .chain(enumerated.keys())
                    .find(|m| series.get(m) != enumerated.get(m))
                    .expect("maps differ");
                bad_refined = bad_refined.or(Some((
                    format!("({n},{k})"),
                    format!(
                        "coefficient of {diff}: series {}, enumeration {}",
                        series.get(diff).cloned().unwrap_or_default(),
                        enumerated.get(diff).cloned().unwrap_or_default()
                    ),
                )));
            }
        }
    }
    b.check("coefficient at a = b = t = 1 equals B_n^(-k)", bad_total);
    b.check("refined coefficients equal enumeration statistics", bad_refined);
    let ok = b.all_ok();
    let summary = format!(
        "{} coefficients, {refined_cells} refined by enumeration, {}",
        (max_n + 1) * (max_k + 1),
        verdict(ok, "checks")
    );
    Ok(b.finish(summary))
}
