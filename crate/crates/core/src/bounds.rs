//! Delsarte-style bounds: inner distributions, the clique–coclique bound,
//! the ratio bound, the equality-case filter and the intersecting-family
//! bounds used for `I = {1, k}`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::combinat::{binom, binom_u64, rat_string, BigRat, KSet, SchemeParams};
use crate::designs::BlockFamily;
use crate::error::{domain, Error, Result};
use crate::graphs::{graph_spectrum, ClassSet, SchemeGraph, Spectrum, VertexSet};
use crate::scheme::{eigen_matrices, is_integral, EigenMatrices};

fn rat(n: impl Into<BigInt>) -> BigRat {
    BigRat::from_integer(n.into())
}

/// Inner distribution of a vertex subset and its MacWilliams transform.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InnerDistribution {
    /// `a_i` = ordered pairs of the subset in class `i`, divided by its size.
    #[serde(serialize_with = "crate::ser::rats")]
    pub a: Vec<BigRat>,
    pub source_size: usize,
    /// `a·Q`; every coordinate is non-negative.
    #[serde(serialize_with = "crate::ser::rats")]
    pub transform: Vec<BigRat>,
    /// Classes `i > 0` with `a_i ≠ 0`.
    pub degree_set: Vec<usize>,
    /// Indices `j > 0` with `(a·Q)_j ≠ 0`.
    pub dual_degree_set: Vec<usize>,
}

/// Pair counts by class for a list of k-set masks.
fn class_counts(masks: &[u64], k: usize) -> Vec<u64> {
    let mut counts = vec![0u64; k + 1];
    for (i, &a) in masks.iter().enumerate() {
        counts[0] += 1;
        for &b in &masks[i + 1..] {
            counts[k - (a & b).count_ones() as usize] += 2;
        }
    }
    counts
}

fn distribution_from_counts(eigen: &EigenMatrices, counts: &[u64], size: usize) -> Result<InnerDistribution> {
    let a: Vec<BigRat> = counts
        .iter()
        .map(|&c| BigRat::new(BigInt::from(c), BigInt::from(size)))
        .collect();
    let transform = eigen.macwilliams(&a);
    if transform[0] != rat(size) {
        return Err(Error::Consistency(format!(
            "(aQ)_0 = {} but the subset has {size} elements",
            rat_string(&transform[0])
        )));
    }
    if let Some((j, t)) = transform.iter().enumerate().find(|(_, t)| t.is_negative()) {
        return Err(Error::Consistency(format!(
            "MacWilliams coordinate {j} is negative ({})",
            rat_string(t)
        )));
    }
    let nonzero = |v: &[BigRat]| (1..v.len()).filter(|&i| !v[i].is_zero()).collect();
    Ok(InnerDistribution {
        degree_set: nonzero(&a),
        dual_degree_set: nonzero(&transform),
        a,
        source_size: size,
        transform,
    })
}

/// Inner distribution of `x`, with its transform, degree set and dual degree set.
pub fn inner_distribution(x: &VertexSet) -> Result<InnerDistribution> {
    if x.is_empty() {
        return domain("inner distribution of an empty set");
    }
    let params = x.params();
    let eigen = eigen_matrices(params)?;
    let masks: Vec<u64> = x.ksets().iter().map(KSet::mask).collect();
    distribution_from_counts(&eigen, &class_counts(&masks, params.k), x.len())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CliqueCocliqueCheck {
    pub clique_size: usize,
    pub coclique_size: usize,
    pub product: u128,
    pub v: u64,
    pub equality: bool,
    /// `(uQ)_j·(wQ)_j` for every `j`; equals `(v, 0, .., 0)` under equality.
    #[serde(serialize_with = "crate::ser::rats")]
    pub schur: Vec<BigRat>,
    /// Whether the Schur product is `(v, 0, .., 0)`. Always checked; must hold when `equality`.
    pub schur_ok: bool,
}

/// Checks `|C|·|S| ≤ v` for a clique `c` and coclique `s` of `g`, and the
/// orthogonality of their transforms in the equality case.
pub fn clique_coclique_check(g: &SchemeGraph, c: &VertexSet, s: &VertexSet) -> Result<CliqueCocliqueCheck> {
    if c.params() != g.params() || s.params() != g.params() {
        return domain("sets and graph belong to different schemes");
    }
    if c.is_empty() || s.is_empty() {
        return domain("clique and coclique must be nonempty");
    }
    if let Some((a, b)) = g.first_non_edge_within(c) {
        return domain(format!(
            "not a clique: {:?} and {:?} are not adjacent",
            g.vertex(a),
            g.vertex(b)
        ));
    }
    if let Some((a, b)) = g.first_edge_within(s) {
        return domain(format!(
            "not a coclique: {:?} and {:?} are adjacent",
            g.vertex(a),
            g.vertex(b)
        ));
    }
    let u = inner_distribution(c)?;
    let w = inner_distribution(s)?;
    let schur: Vec<BigRat> = u.transform.iter().zip(&w.transform).map(|(x, y)| x * y).collect();
    let v = g.params().v;
    let product = c.len() as u128 * s.len() as u128;
    if product > v as u128 {
        return Err(Error::Consistency(format!(
            "clique of size {} and coclique of size {} exceed v = {v}",
            c.len(),
            s.len()
        )));
    }
    let schur_ok = schur[0] == rat(v) && schur[1..].iter().all(Zero::is_zero);
    let equality = product == v as u128;
    if equality && !schur_ok {
        return Err(Error::Consistency("equality pair with non-orthogonal transforms".into()));
    }
    Ok(CliqueCocliqueCheck {
        clique_size: c.len(),
        coclique_size: s.len(),
        product,
        v,
        equality,
        schur,
        schur_ok,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RatioBound {
    pub degree: u64,
    #[serde(serialize_with = "crate::ser::int")]
    pub tau: BigInt,
    /// `v / (1 - deg/τ)`, an upper bound on the coclique number.
    #[serde(serialize_with = "crate::ser::rat")]
    pub alpha_bound: BigRat,
    /// `1 - deg/τ`, the clique number forced by `ω·α = v`.
    #[serde(serialize_with = "crate::ser::rat")]
    pub omega_if_equality: BigRat,
    /// `τ | deg`.
    pub divisibility_ok: bool,
}

fn ratio_from_spectrum(params: &SchemeParams, classes: &ClassSet, sp: &Spectrum) -> Result<RatioBound> {
    if !classes.is_nontrivial() {
        return domain(format!("ratio bound needs a non-trivial class set, got {classes}"));
    }
    if !sp.tau.is_negative() {
        return Err(Error::Consistency(format!("smallest eigenvalue {} is not negative", sp.tau)));
    }
    let omega = BigRat::one() - BigRat::new(BigInt::from(sp.degree), sp.tau.clone());
    Ok(RatioBound {
        degree: sp.degree,
        tau: sp.tau.clone(),
        alpha_bound: rat(params.v) / &omega,
        divisibility_ok: is_integral(&omega),
        omega_if_equality: omega,
    })
}

pub fn ratio_bound(g: &SchemeGraph) -> Result<RatioBound> {
    ratio_from_spectrum(g.params(), g.classes(), g.spectrum())
}

/// Ratio bound of `Γ_I(n, k)` straight from the eigenvalue matrices.
pub fn ratio_bound_for(params: &SchemeParams, classes: &ClassSet) -> Result<RatioBound> {
    ratio_from_spectrum(params, classes, &graph_spectrum(params, classes)?)
}

/// The `n` in range for which the smallest eigenvalue of `Γ_I(n, k)` divides its degree.
///
/// Values of `n` below `2k` have no eigenvalue matrices and are skipped.
pub fn ratio_divisibility_scan(
    k: usize,
    classes: &ClassSet,
    n_range: impl IntoIterator<Item = usize>,
) -> Result<Vec<usize>> {
    if classes.k() != k || !classes.is_nontrivial() {
        return domain(format!("{classes} is not a non-trivial class set for k={k}"));
    }
    let mut kept = Vec::new();
    for n in n_range {
        if n < 2 * k {
            continue;
        }
        let params = SchemeParams::new(n, k)?;
        if ratio_bound_for(&params, classes)?.divisibility_ok {
            kept.push(n);
        }
    }
    Ok(kept)
}

/// A clique/coclique size pair with inner distributions compatible with
/// equality in the clique–coclique bound.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct EqualityAnsatz {
    pub x: u64,
    pub y: u64,
    /// Each entry lists the `j` at which `(uQ)_j = 0` is imposed; `(wQ)_j = 0` for the rest.
    pub patterns: Vec<Vec<usize>>,
    /// Vertices of the feasible region of clique distributions `u`.
    #[serde(serialize_with = "rat_rows")]
    pub u: Vec<Vec<BigRat>>,
    /// Vertices of the feasible region of coclique distributions `w`.
    #[serde(serialize_with = "rat_rows")]
    pub w: Vec<Vec<BigRat>>,
}

fn rat_rows<S: serde::Serializer>(m: &[Vec<BigRat>], s: S) -> std::result::Result<S::Ok, S::Error> {
    crate::ser::rat_matrix(m, s)
}

impl EqualityAnsatz {
    /// True when every feasible distribution is a single point on both sides.
    pub fn is_unique(&self) -> bool {
        self.u.len() == 1 && self.w.len() == 1
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SizeCap {
    pub value: u64,
    pub reason: &'static str,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EqualityFilter {
    pub n: usize,
    pub k: usize,
    pub classes: ClassSet,
    pub v: u64,
    pub clique_cap: Option<SizeCap>,
    pub coclique_cap: Option<SizeCap>,
    /// Factor pairs `x·y = v` tried after applying the caps.
    pub pairs_tried: usize,
    pub feasible: Vec<EqualityAnsatz>,
}

/// Known upper bounds on the clique number of `Γ_I(n, k)` that hold without search.
pub fn clique_cap(n: usize, k: usize, classes: &ClassSet) -> Option<SizeCap> {
    let c = classes.classes();
    if k == 4 && c == [1, 3] && n > 6 {
        return Some(SizeCap {
            value: double_count_bound_13(n).ok()?,
            reason: "double count over {0,2}-intersecting links",
        });
    }
    if k >= 3 && c == [1, k] && n > 2 * k {
        return Some(SizeCap {
            value: nbound_value(n, k).ok()?,
            reason: "{0,k-1}-intersecting families have at most n members",
        });
    }
    None
}

fn divisors(v: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= v {
        if v % d == 0 {
            small.push(d);
            if d * d != v {
                large.push(v / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Unique solution of `m·z = rhs`, or `None` if inconsistent or underdetermined.
fn solve_unique(mut m: Vec<Vec<BigRat>>, mut rhs: Vec<BigRat>, cols: usize) -> Option<Vec<BigRat>> {
    let rows = m.len();
    let mut pivot_row = 0;
    for c in 0..cols {
        let p = (pivot_row..rows).find(|&r| !m[r][c].is_zero())?;
        m.swap(pivot_row, p);
        rhs.swap(pivot_row, p);
        let inv = BigRat::one() / &m[pivot_row][c];
        for x in m[pivot_row].iter_mut() {
            *x *= &inv;
        }
        rhs[pivot_row] *= &inv;
        for r in 0..rows {
            if r != pivot_row && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                for cc in 0..cols {
                    let d = &f * &m[pivot_row][cc];
                    m[r][cc] -= d;
                }
                let d = &f * &rhs[pivot_row];
                rhs[r] -= d;
            }
        }
        pivot_row += 1;
    }
    if rhs[pivot_row..].iter().any(|x| !x.is_zero()) {
        return None;
    }
    Some(rhs[..cols].to_vec())
}

/// Vertices of `{a : a_0 = 1, supp(a) ⊆ {0} ∪ support, a ≥ 0, Σa = size, (aQ)_j = 0 for j ∈ zeros}`.
fn feasible_vertices(eigen: &EigenMatrices, support: &[usize], size: u64, zeros: &[usize]) -> Vec<Vec<BigRat>> {
    let d = eigen.params.k + 1;
    let mut found = BTreeSet::new();
    for free_mask in 0u32..1 << support.len() {
        let free: Vec<usize> = (0..support.len())
            .filter(|&b| free_mask >> b & 1 == 1)
            .map(|b| support[b])
            .collect();
        let mut m = Vec::new();
        let mut rhs = Vec::new();
        m.push(vec![BigRat::one(); free.len()]);
        rhs.push(rat(size) - BigRat::one());
        for &j in zeros {
            m.push(free.iter().map(|&i| eigen.q[i][j].clone()).collect());
            rhs.push(-eigen.q[0][j].clone());
        }
        let sol = if free.is_empty() {
            rhs.iter().all(Zero::is_zero).then(Vec::new)
        } else {
            solve_unique(m, rhs, free.len())
        };
        let Some(sol) = sol else { continue };
        if sol.iter().any(Signed::is_negative) {
            continue;
        }
        let mut a = vec![BigRat::zero(); d];
        a[0] = BigRat::one();
        for (&i, val) in free.iter().zip(sol) {
            a[i] = val;
        }
        found.insert(a);
    }
    found.into_iter().collect()
}

/// All factor pairs `x·y = C(n, k)` and transform-orthogonality patterns
/// admitting nonnegative clique and coclique inner distributions.
///
/// For each pair and each choice of which factor of `(uQ)_j·(wQ)_j`
/// vanishes, the feasible distributions form a polytope; its vertices are
/// found by exact basic-solution enumeration. An empty result proves that
/// `Γ_I(n, k)` has no clique/coclique pair with `ω·α = v`.
pub fn equality_filter(n: usize, k: usize, classes: &ClassSet) -> Result<EqualityFilter> {
    filter_impl(n, k, classes, true)
}

/// [`equality_filter`] without the known clique-size caps.
pub fn equality_filter_uncapped(n: usize, k: usize, classes: &ClassSet) -> Result<EqualityFilter> {
    filter_impl(n, k, classes, false)
}

fn filter_impl(n: usize, k: usize, classes: &ClassSet, caps: bool) -> Result<EqualityFilter> {
    let params = SchemeParams::new(n, k)?;
    if classes.k() != k || !classes.is_nontrivial() {
        return domain(format!("{classes} is not a non-trivial class set for k={k}"));
    }
    if k > 10 {
        return Err(Error::Unsupported(format!("equality filter enumerates 2^k patterns; k={k} is too large")));
    }
    let eigen = eigen_matrices(&params)?;
    let clique_support = classes.classes();
    let coclique_support = classes.complement().classes();
    let (clique_cap, coclique_cap) = if caps {
        (clique_cap(n, k, classes), clique_cap(n, k, &classes.complement()))
    } else {
        (None, None)
    };
    let v = params.v;
    let mut pairs_tried = 0;
    let mut feasible: Vec<EqualityAnsatz> = Vec::new();
    for x in divisors(v) {
        let y = v / x;
        if x < 2 || y < 2 {
            continue;
        }
        if clique_cap.as_ref().is_some_and(|c| x > c.value) || coclique_cap.as_ref().is_some_and(|c| y > c.value) {
            continue;
        }
        pairs_tried += 1;
        for pattern in 0u32..1 << k {
            let zu: Vec<usize> = (1..=k).filter(|j| pattern >> (j - 1) & 1 == 1).collect();
            let zw: Vec<usize> = (1..=k).filter(|j| pattern >> (j - 1) & 1 == 0).collect();
            let u = feasible_vertices(&eigen, &clique_support, x, &zu);
            if u.is_empty() {
                continue;
            }
            let w = feasible_vertices(&eigen, &coclique_support, y, &zw);
            if w.is_empty() {
                continue;
            }
            match feasible.iter_mut().find(|e| e.x == x && e.u == u && e.w == w) {
                Some(e) => e.patterns.push(zu),
                None => feasible.push(EqualityAnsatz {
                    x,
                    y,
                    patterns: vec![zu],
                    u,
                    w,
                }),
            }
        }
    }
    feasible.sort();
    Ok(EqualityFilter {
        n,
        k,
        classes: *classes,
        v,
        clique_cap,
        coclique_cap,
        pairs_tried,
        feasible,
    })
}

/// Upper bound `n` on `{0, k-1}`-intersecting families of k-subsets of an n-set (`n > 2k`).
pub fn nbound_value(n: usize, k: usize) -> Result<u64> {
    if k < 3 || n <= 2 * k {
        return domain(format!("the bound needs k >= 3 and n > 2k, got n={n}, k={k}"));
    }
    Ok(n as u64)
}

/// One class of the relation "equal or meeting in `k-1` points".
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NBoundClass {
    /// A lone member.
    Single { block: Vec<usize> },
    /// All members contain a fixed `(k-1)`-set.
    Kernel { kernel: Vec<usize>, blocks: Vec<Vec<usize>> },
    /// All members lie in a fixed `(k+1)`-set.
    Contained { span: Vec<usize>, blocks: Vec<Vec<usize>> },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NBoundReport {
    pub size: usize,
    /// `None` when `n <= 2k`, where the bound is not claimed.
    pub bound: Option<u64>,
    pub within_bound: bool,
    pub classes: Vec<NBoundClass>,
}

fn bits_to_points(mask: u64) -> Vec<usize> {
    (0..64).filter(|b| mask >> b & 1 == 1).map(|b| b + 1).collect()
}

/// Checks that `fam` is `{0, k-1}`-intersecting and reports its size
/// against `n` along with its equivalence-class structure.
pub fn nbound_check(fam: &BlockFamily) -> Result<NBoundReport> {
    let k = fam.k;
    if k < 3 {
        return domain(format!("need k >= 3, got {k}"));
    }
    let masks: Vec<u64> = fam.blocks.iter().map(KSet::mask).collect();
    for (i, &a) in masks.iter().enumerate() {
        for (j, &b) in masks.iter().enumerate().skip(i + 1) {
            let m = (a & b).count_ones() as usize;
            if m != 0 && m != k - 1 {
                return domain(format!(
                    "blocks {:?} and {:?} meet in {m} points",
                    fam.blocks[i], fam.blocks[j]
                ));
            }
        }
    }
    // union-find over "meet in k-1 points"
    let mut parent: Vec<usize> = (0..masks.len()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for i in 0..masks.len() {
        for j in i + 1..masks.len() {
            if (masks[i] & masks[j]).count_ones() as usize == k - 1 {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut root_of = std::collections::BTreeMap::new();
    for i in 0..masks.len() {
        let r = find(&mut parent, i);
        let g = *root_of.entry(r).or_insert_with(|| {
            groups.push(Vec::new());
            groups.len() - 1
        });
        groups[g].push(i);
    }
    let mut classes = Vec::new();
    for g in groups {
        let blocks: Vec<Vec<usize>> = g.iter().map(|&i| fam.blocks[i].elements()).collect();
        if g.len() == 1 {
            classes.push(NBoundClass::Single { block: blocks.into_iter().next().unwrap() });
            continue;
        }
        let inter = g.iter().fold(u64::MAX, |acc, &i| acc & masks[i]);
        let union = g.iter().fold(0u64, |acc, &i| acc | masks[i]);
        if inter.count_ones() as usize == k - 1 {
            classes.push(NBoundClass::Kernel { kernel: bits_to_points(inter), blocks });
        } else if union.count_ones() as usize == k + 1 {
            classes.push(NBoundClass::Contained { span: bits_to_points(union), blocks });
        } else {
            return Err(Error::Consistency(format!(
                "class of {} blocks has neither a common (k-1)-set nor a (k+1)-set span",
                g.len()
            )));
        }
    }
    let bound = nbound_value(fam.n, k).ok();
    Ok(NBoundReport {
        size: fam.blocks.len(),
        within_bound: bound.is_none_or(|b| fam.blocks.len() as u64 <= b),
        bound,
        classes,
    })
}

/// `⌊n(n-1)/4⌋`, an upper bound on cliques of `Γ_{1,3}(n, 4)` for `n > 6`.
pub fn double_count_bound_13(n: usize) -> Result<u64> {
    if n <= 6 {
        return domain(format!("the double count needs n > 6, got {n}"));
    }
    Ok((n * (n - 1) / 4) as u64)
}

/// `C(n-1, k-1) - C(n-k-1, k-1) + 1`.
pub fn hilton_milner(n: usize, k: usize) -> Result<BigInt> {
    if k == 0 || n <= 2 * k {
        return domain(format!("Hilton–Milner needs n > 2k, got n={n}, k={k}"));
    }
    let (n, k) = (n as u64, k as i64);
    Ok(binom(n - 1, k - 1) - binom(n - k as u64 - 1, k - 1) + 1)
}

/// Left side `n·max(C(n-1,k-2)/(k-1), HM(n,k))` of the `I = {1, k}` size argument.
fn threshold_lhs(n: usize, k: usize) -> Result<BigRat> {
    let a = BigRat::new(binom(n as u64 - 1, k as i64 - 2), BigInt::from(k - 1));
    let b = rat(hilton_milner(n, k)?);
    Ok(rat(n) * a.max(b))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThresholdStep {
    pub n: usize,
    #[serde(serialize_with = "crate::ser::rat")]
    pub lhs: BigRat,
    #[serde(serialize_with = "crate::ser::int")]
    pub rhs: BigInt,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeparationThreshold {
    pub k: usize,
    /// Smallest `N` with `lhs(n) < C(n, k)` for every scanned `n >= N`.
    pub threshold: usize,
    /// Last `n` at which the inequality fails, if any.
    pub last_failure: Option<ThresholdStep>,
    pub first_success: ThresholdStep,
    /// The inequality was checked, and `lhs/C(n,k)` seen decreasing, through here.
    pub verified_through: usize,
}

/// Smallest `N` beyond which the `I = {1, k}` clique and coclique bounds
/// force `ω·α < C(n, k)`.
///
/// The left side has degree `k - 1` in `n` and the right side degree `k`, so
/// the ratio eventually decreases to zero. The scan stops once the ratio has
/// decreased for 100 consecutive `n` past the last failure.
pub fn separation_threshold_1k(k: usize) -> Result<SeparationThreshold> {
    if k < 3 {
        return domain(format!("need k >= 3, got {k}"));
    }
    let mut last_failure: Option<ThresholdStep> = None;
    let mut first_success: Option<ThresholdStep> = None;
    let mut streak = 0;
    let mut prev_ratio: Option<BigRat> = None;
    let mut n = 2 * k + 1;
    loop {
        if n > crate::combinat::MAX_N * 64 {
            return Err(Error::Consistency(format!("no threshold found for k={k}")));
        }
        let lhs = threshold_lhs(n, k)?;
        let rhs = binom(n as u64, k as i64);
        let ratio = &lhs / rat(rhs.clone());
        let decreasing = prev_ratio.as_ref().is_none_or(|p| &ratio < p);
        if lhs < rat(rhs.clone()) {
            if first_success.is_none() {
                first_success = Some(ThresholdStep { n, lhs, rhs });
            }
            streak = if decreasing { streak + 1 } else { 0 };
            if streak >= 100 {
                break;
            }
        } else {
            last_failure = Some(ThresholdStep { n, lhs, rhs });
            first_success = None;
            streak = 0;
        }
        prev_ratio = Some(ratio);
        n += 1;
    }
    let first_success = first_success.expect("loop exits after a success");
    Ok(SeparationThreshold {
        k,
        threshold: first_success.n,
        last_failure,
        first_success,
        verified_through: n,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EkrRegime {
    /// `t < k < 2t`: the inequality is compared.
    Compared,
    /// `k >= 2t`: any two t-sets lie in a common k-set, so kernels always intersect.
    KernelsAlwaysIntersect,
    /// `n < 2k`, `t >= k` or `t = 0`.
    OutsideTheorem,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EkrPartition {
    pub regime: EkrRegime,
    /// `C(n, t) / C(k, t)`.
    #[serde(serialize_with = "crate::ser::opt_rat")]
    pub lhs: Option<BigRat>,
    /// `C(n, 2t-k) / C(t, 2t-k)`.
    #[serde(serialize_with = "crate::ser::opt_rat")]
    pub rhs: Option<BigRat>,
    pub holds: bool,
}

/// The counting inequality ruling out a partition of the k-sets into EKR cocliques of `Δ_t`.
pub fn ekr_partition_inequality(n: usize, k: usize, t: usize) -> EkrPartition {
    let outside = EkrPartition {
        regime: EkrRegime::OutsideTheorem,
        lhs: None,
        rhs: None,
        holds: false,
    };
    if t == 0 || t >= k || n < 2 * k {
        return outside;
    }
    let ratio = |a: usize, b: usize, r: usize| {
        BigRat::new(binom(a as u64, r as i64), binom(b as u64, r as i64))
    };
    let lhs = ratio(n, k, t);
    if k >= 2 * t {
        return EkrPartition {
            regime: EkrRegime::KernelsAlwaysIntersect,
            lhs: Some(lhs),
            rhs: None,
            holds: true,
        };
    }
    let rhs = ratio(n, t, 2 * t - k);
    EkrPartition {
        regime: EkrRegime::Compared,
        holds: lhs > rhs,
        lhs: Some(lhs),
        rhs: Some(rhs),
    }
}

/// `n > (t+1)(k-t+1)`: maximum cocliques of `Δ_t(n, k)` are exactly the EKR families.
pub fn wilson_regime(n: usize, k: usize, t: usize) -> Result<bool> {
    if t == 0 || t >= k {
        return domain(format!("need 0 < t < k, got t={t}, k={k}"));
    }
    Ok(n > (t + 1) * (k - t + 1))
}

/// Number of blocks a Steiner system `S(t, k, n)` would have, if integral.
pub fn steiner_block_count(t: usize, k: usize, n: usize) -> Option<u64> {
    let (num, den) = (binom_u64(n, t), binom_u64(k, t));
    (den != 0 && num % den == 0).then(|| num / den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{build_graph, GraphOptions};
    use crate::search::{max_clique, max_coclique, SearchOptions};

    fn r(a: i64, b: i64) -> BigRat {
        BigRat::new(a.into(), b.into())
    }

    fn graph(n: usize, k: usize, c: &[usize]) -> SchemeGraph {
        let p = SchemeParams::new(n, k).unwrap();
        build_graph(&p, &ClassSet::new(k, c).unwrap(), &GraphOptions::default()).unwrap()
    }

    fn fano(n: usize) -> VertexSet {
        let lines = [[1, 2, 4], [2, 3, 5], [3, 4, 6], [4, 5, 7], [5, 6, 1], [6, 7, 2], [7, 1, 3]];
        let ks: Vec<KSet> = lines.iter().map(|l| KSet::from_elements(n, l).unwrap()).collect();
        VertexSet::from_ksets(&SchemeParams::new(n, 3).unwrap(), &ks).unwrap()
    }

    #[test]
    fn whole_vertex_set_distribution() {
        let p = SchemeParams::new(10, 4).unwrap();
        let d = inner_distribution(&VertexSet::all(&p)).unwrap();
        let e = eigen_matrices(&p).unwrap();
        assert_eq!(d.a, e.valencies.iter().map(|x| rat(x.clone())).collect::<Vec<_>>());
        assert_eq!(d.transform[0], rat(210));
        assert!(d.transform[1..].iter().all(Zero::is_zero));
        assert!(d.dual_degree_set.is_empty());
    }

    #[test]
    fn fano_distribution() {
        let d = inner_distribution(&fano(7)).unwrap();
        assert_eq!(d.a, vec![r(1, 1), r(0, 1), r(6, 1), r(0, 1)]);
        assert_eq!(d.degree_set, vec![2]);
        let single = VertexSet::from_ranks(&SchemeParams::new(7, 3).unwrap(), [5]).unwrap();
        assert_eq!(inner_distribution(&single).unwrap().a, vec![r(1, 1), r(0, 1), r(0, 1), r(0, 1)]);
        assert!(inner_distribution(&VertexSet::empty(&SchemeParams::new(7, 3).unwrap())).is_err());
    }

    #[test]
    fn sqs8_equality_pair() {
        // SQS(8) blocks (coclique of Γ_{1,3}) with an EKR partner on a 3-set
        let p = SchemeParams::new(8, 4).unwrap();
        let sqs: Vec<KSet> = (0..70u64)
            .map(|r| KSet::unrank(r, &p).unwrap())
            .filter(|b| b.elements().iter().fold(0, |acc, &e| acc ^ (e - 1)) == 0)
            .collect();
        assert_eq!(sqs.len(), 14);
        let s = VertexSet::from_ksets(&p, &sqs).unwrap();
        let ekr: Vec<KSet> = (4..=8).map(|e| KSet::from_elements(8, &[1, 2, 3, e]).unwrap()).collect();
        let c = VertexSet::from_ksets(&p, &ekr).unwrap();
        // Δ_3(8,4) = Γ_{2,3,4}: EKR is a coclique there and SQS a clique
        let g = graph(8, 4, &[1]);
        let chk = clique_coclique_check(&g, &c, &s).unwrap();
        assert!(chk.equality && chk.schur_ok);
        assert_eq!(chk.product, 70);
        let bad = clique_coclique_check(&g, &s, &c);
        assert!(matches!(bad, Err(Error::Domain(_))));
    }

    #[test]
    fn small_check_without_equality() {
        let g = graph(9, 4, &[2]);
        let one = VertexSet::from_ranks(g.params(), [0]).unwrap();
        let chk = clique_coclique_check(&g, &one, &one).unwrap();
        assert_eq!(chk.product, 1);
        assert!(!chk.equality);
    }

    #[test]
    fn ratio_values() {
        let p = SchemeParams::new(10, 4).unwrap();
        let rb = ratio_bound_for(&p, &ClassSet::new(4, &[2]).unwrap()).unwrap();
        assert_eq!((rb.degree, rb.tau.clone()), (90, BigInt::from(-9)));
        assert_eq!(rb.omega_if_equality, rat(11));
        assert!(rb.divisibility_ok);
        let p9 = SchemeParams::new(9, 4).unwrap();
        let rb = ratio_bound_for(&p9, &ClassSet::new(4, &[2]).unwrap()).unwrap();
        assert_eq!((rb.degree, rb.tau.clone()), (60, BigInt::from(-8)));
        assert!(!rb.divisibility_ok);
        let p29 = SchemeParams::new(29, 4).unwrap();
        let rb = ratio_bound_for(&p29, &ClassSet::new(4, &[3]).unwrap()).unwrap();
        assert_eq!(rb.omega_if_equality, rat(21));
        assert!(ratio_bound_for(&p, &ClassSet::new(4, &[]).unwrap()).is_err());
    }

    #[test]
    fn divisibility_scans() {
        let two = ClassSet::new(4, &[2]).unwrap();
        assert_eq!(ratio_divisibility_scan(4, &two, 11..=60).unwrap(), vec![11, 12, 14, 20]);
        let three = ClassSet::new(4, &[3]).unwrap();
        assert_eq!(
            ratio_divisibility_scan(4, &three, 13..=60).unwrap(),
            vec![13, 14, 17, 19, 29, 49]
        );
        assert!(ratio_divisibility_scan(4, &three, [9, 11]).unwrap().is_empty());
    }

    #[test]
    fn ratio_bound_is_sound() {
        for (n, c) in [(9, vec![1, 3]), (10, vec![2]), (10, vec![1, 4]), (8, vec![3])] {
            let g = graph(n, 4, &c);
            let a = max_coclique(&g, &SearchOptions::default()).unwrap();
            assert!(a.proved_optimal);
            assert!(rat(a.size as u64) <= ratio_bound(&g).unwrap().alpha_bound);
        }
    }

    // (uQ)_1 for I={1,3}, k=4 as a polynomial in n: agreement at more points
    // than the degree proves the identity
    #[test]
    fn transform_coordinate_identity_13() {
        for n in 10..40i64 {
            let e = eigen_matrices(&SchemeParams::new(n as usize, 4).unwrap()).unwrap();
            for (a, x) in [(2i64, 9i64), (0, 5), (7, 13)] {
                let u = vec![rat(1), rat(a), rat(0), rat(x - a - 1), rat(0)];
                let got = &e.macwilliams(&u)[1];
                let want = r(n - 1, 4 * (n - 4)) * rat((2 * a + x + 3) * n - 16 * x);
                assert_eq!(got, &want, "n={n}");
            }
            for (b, y) in [(3i64, 14i64), (0, 21)] {
                let w = vec![rat(1), rat(0), rat(b), rat(0), rat(y - b - 1)];
                let want = r(n - 1, 4 * (n - 4)) * rat(2 * ((b + 2) * n - 8 * y));
                assert_eq!(&e.macwilliams(&w)[1], &want);
            }
        }
    }

    // (uQ)_1, (wQ)_1 for I={1,4}, and the second-coordinate product up to a factor depending on n only
    #[test]
    fn transform_coordinate_identity_14() {
        for n in 12..40i64 {
            let e = eigen_matrices(&SchemeParams::new(n as usize, 4).unwrap()).unwrap();
            let f = r(n - 1, 4 * (n - 4));
            let mut factor: Option<BigRat> = None;
            for (a, x, b, y) in [(3i64, 11i64, 2i64, 17i64), (1, 6, 5, 9), (0, 4, 7, 30)] {
                let tu = e.macwilliams(&[rat(1), rat(a), rat(0), rat(0), rat(x - a - 1)]);
                let tw = e.macwilliams(&[rat(1), rat(0), rat(b), rat(y - b - 1), rat(0)]);
                assert_eq!(tu[1], &f * rat((3 * a + 4) * n - 16 * x));
                assert_eq!(tw[1], &f * rat((b + y + 3) * n - 16 * y));
                let shown = rat(((n - 1) * (a * (n - 11) + 2 * (n - 8)) + 24 * x)
                    * ((n - 1) * (b * (n - 11) + 6 * n - 39) - 9 * (n - 9) * y));
                let c = &tu[2] * &tw[2] / shown;
                match &factor {
                    None => factor = Some(c),
                    Some(prev) => assert_eq!(prev, &c, "n={n}"),
                }
            }
        }
    }

    #[test]
    fn filter_13_large_n_matches_closed_form() {
        let c = ClassSet::new(4, &[1, 3]).unwrap();
        for n in [17usize, 18, 20, 24] {
            let f = equality_filter_uncapped(n, 4, &c).unwrap();
            for e in &f.feasible {
                let n = n as i64;
                assert_eq!(rat(e.x), r((n - 1) * (n - 3), 3));
                assert_eq!(rat(e.y), r(n * (n - 2), 8));
                for w in &e.w {
                    assert_eq!(w[2], rat(n - 4));
                }
            }
            // the double-count cap removes every candidate
            assert!(equality_filter(n, 4, &c).unwrap().feasible.is_empty(), "n={n}");
        }
    }

    #[test]
    fn filter_14_branch_two_absent() {
        let c = ClassSet::new(4, &[1, 4]).unwrap();
        for n in 17..=22 {
            let f = equality_filter_uncapped(n, 4, &c).unwrap();
            for e in &f.feasible {
                assert!(e.patterns.iter().all(|p| p.contains(&1)), "n={n}");
            }
        }
    }

    #[test]
    fn filter_finds_steiner_equality() {
        // S(3,4,10) × EKR: 30 · 7 = 210 on Δ_3 = Γ_{2,3,4}
        let f = equality_filter(10, 4, &ClassSet::new(4, &[2, 3, 4]).unwrap()).unwrap();
        assert!(f.feasible.iter().any(|e| e.x == 30 && e.y == 7));
        // (9,4) non-separating via {1,3}: 9 · 14
        let f = equality_filter(9, 4, &ClassSet::new(4, &[1, 3]).unwrap()).unwrap();
        assert!(f.feasible.iter().any(|e| e.x == 9 && e.y == 14));
        assert!(equality_filter(10, 4, &ClassSet::new(4, &[1, 2, 3, 4]).unwrap()).is_err());
    }

    #[test]
    fn solver_basics() {
        let m = vec![vec![r(1, 1), r(1, 1)], vec![r(1, 1), r(-1, 1)]];
        assert_eq!(solve_unique(m, vec![r(3, 1), r(1, 1)], 2), Some(vec![r(2, 1), r(1, 1)]));
        let m = vec![vec![r(1, 1), r(1, 1)]];
        assert_eq!(solve_unique(m, vec![r(3, 1)], 2), None);
        let m = vec![vec![r(1, 1)], vec![r(2, 1)]];
        assert_eq!(solve_unique(m, vec![r(1, 1), r(3, 1)], 1), None);
    }

    #[test]
    fn nbound_families() {
        let pair: Vec<Vec<usize>> = (3..=10).map(|e| vec![1, 2, e]).collect();
        let fam = BlockFamily::new(10, 3, "pair", &pair).unwrap();
        let rep = nbound_check(&fam).unwrap();
        assert_eq!((rep.size, rep.bound, rep.within_bound), (8, Some(10), true));
        assert_eq!(rep.classes.len(), 1);
        assert!(matches!(&rep.classes[0], NBoundClass::Kernel { kernel, .. } if kernel == &vec![1, 2]));
        let quad = BlockFamily::new(10, 3, "quad", &[vec![1, 2, 3], vec![1, 2, 4], vec![1, 3, 4], vec![2, 3, 4]]).unwrap();
        let rep = nbound_check(&quad).unwrap();
        assert!(matches!(&rep.classes[0], NBoundClass::Contained { span, .. } if span == &vec![1, 2, 3, 4]));
        let bad = BlockFamily::new(10, 3, "bad", &[vec![1, 2, 3], vec![3, 4, 5]]).unwrap();
        assert!(nbound_check(&bad).is_err());
        assert_eq!(nbound_value(10, 4).unwrap(), 10);
    }

    #[test]
    fn nbound_on_clique_search() {
        // cliques of Γ_{1,3}(n,3) are {0,2}-intersecting families
        for n in [7, 8, 9] {
            let g = graph(n, 3, &[1, 3]);
            let w = max_clique(&g, &SearchOptions::default()).unwrap();
            assert!(w.size as u64 <= n as u64);
        }
    }

    #[test]
    fn double_count() {
        assert_eq!(double_count_bound_13(16).unwrap(), 60);
        assert_eq!(double_count_bound_13(17).unwrap(), 68);
        assert_eq!(double_count_bound_13(12).unwrap(), 33);
        assert!(double_count_bound_13(6).is_err());
        for n in 16..100i64 {
            assert!(rat(double_count_bound_13(n as usize).unwrap()) < r((n - 1) * (n - 3), 3));
        }
    }

    #[test]
    fn hilton_milner_values() {
        assert_eq!(hilton_milner(10, 4).unwrap(), BigInt::from(75));
        assert_eq!(hilton_milner(46, 4).unwrap(), BigInt::from(3531));
        assert_eq!(hilton_milner(45, 4).unwrap(), BigInt::from(3365));
        for k in 2..8usize {
            let n = 2 * k + 1;
            let want = binom(2 * k as u64, k as i64 - 1) - binom(k as u64, k as i64 - 1) + 1;
            assert_eq!(hilton_milner(n, k).unwrap(), want);
        }
        assert!(hilton_milner(8, 4).is_err());
    }

    #[test]
    fn threshold_k4() {
        let t = separation_threshold_1k(4).unwrap();
        assert_eq!(t.threshold, 46);
        let lf = t.last_failure.unwrap();
        assert_eq!((lf.n, lf.lhs, lf.rhs), (45, rat(151425), BigInt::from(148995)));
        assert_eq!((t.first_success.lhs, t.first_success.rhs), (rat(162426), BigInt::from(163185)));
        for n in 46..=t.threshold + 100 {
            assert!(threshold_lhs(n, 4).unwrap() < rat(binom(n as u64, 4)));
        }
        let t3 = separation_threshold_1k(3).unwrap();
        for n in t3.threshold..t3.threshold + 100 {
            assert!(threshold_lhs(n, 3).unwrap() < rat(binom(n as u64, 3)));
        }
        if let Some(f) = t3.last_failure {
            assert_eq!(f.n + 1, t3.threshold);
        }
    }

    #[test]
    fn ekr_inequality() {
        let e = ekr_partition_inequality(9, 4, 3);
        assert_eq!((e.lhs.unwrap(), e.rhs.unwrap(), e.holds), (rat(21), rat(12), true));
        let e = ekr_partition_inequality(12, 5, 4);
        assert_eq!((e.lhs.unwrap(), e.rhs.unwrap()), (rat(99), rat(55)));
        assert_eq!(ekr_partition_inequality(20, 6, 3).regime, EkrRegime::KernelsAlwaysIntersect);
        for t in 2..=6 {
            for k in t + 1..2 * t {
                for n in 2 * k..=40 {
                    let e = ekr_partition_inequality(n, k, t);
                    assert_eq!(e.regime, EkrRegime::Compared);
                    assert!(e.holds, "n={n} k={k} t={t}");
                }
            }
        }
    }

    #[test]
    fn wilson() {
        assert!(wilson_regime(10, 4, 3).unwrap());
        assert!(wilson_regime(9, 4, 3).unwrap());
        assert!(!wilson_regime(8, 4, 3).unwrap());
        assert!(wilson_regime(8, 4, 4).is_err());
    }

    #[test]
    fn block_counts() {
        assert_eq!(steiner_block_count(3, 4, 10), Some(30));
        assert_eq!(steiner_block_count(2, 4, 13), Some(13));
        assert_eq!(steiner_block_count(3, 4, 12), Some(55));
        assert_eq!(steiner_block_count(2, 4, 11), None);
    }
}
