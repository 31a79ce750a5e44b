//! Union graphs `Γ_I(n, k)` of the Johnson scheme with dense bitset adjacency.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;
use rayon::prelude::*;
use serde::Serialize;

use crate::bitset::Bitset;
use crate::combinat::{unrank_mask, KSet, SchemeParams};
use crate::error::{domain, Error, Result};
use crate::scheme::{eigen_matrices, EigenMatrices};

/// Default adjacency budget: 4 GiB of bitset rows.
pub const DEFAULT_MEMORY_BUDGET: u64 = 4 << 30;

/// A set of scheme classes drawn from `{1,..,k}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassSet {
    k: usize,
    /// bit `j` set iff class `j` is included; bit 0 is never set
    bits: u32,
}

impl ClassSet {
    pub fn new(k: usize, classes: &[usize]) -> Result<Self> {
        if k == 0 || k > 30 {
            return domain(format!("k={k} out of range"));
        }
        let mut bits = 0u32;
        for &j in classes {
            if j == 0 || j > k {
                return domain(format!("class {j} outside 1..={k}"));
            }
            bits |= 1 << j;
        }
        Ok(ClassSet { k, bits })
    }

    /// From a bitmask whose bit `j - 1` stands for class `j`.
    pub fn from_index(k: usize, index: u32) -> Result<Self> {
        if index >> k != 0 {
            return domain(format!("class index {index:#b} has classes beyond k={k}"));
        }
        Ok(ClassSet { k, bits: index << 1 })
    }

    /// Bitmask with bit `j - 1` for class `j`; classes order by this value.
    pub fn index(&self) -> u32 {
        self.bits >> 1
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn contains(&self, j: usize) -> bool {
        j <= self.k && self.bits >> j & 1 == 1
    }

    pub fn classes(&self) -> Vec<usize> {
        (1..=self.k).filter(|&j| self.contains(j)).collect()
    }

    pub fn complement(&self) -> ClassSet {
        let all = ((1u32 << self.k) - 1) << 1;
        ClassSet {
            k: self.k,
            bits: all & !self.bits,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn is_full(&self) -> bool {
        self.complement().is_empty()
    }

    /// Neither empty nor all classes.
    pub fn is_nontrivial(&self) -> bool {
        !self.is_empty() && !self.is_full()
    }

    /// `Δ_t(n, k)`: k-sets meeting in fewer than `t` points.
    pub fn delta(t: usize, k: usize) -> Result<Self> {
        if t == 0 || t >= k {
            return domain(format!("need 0 < t < k, got t={t}, k={k}"));
        }
        ClassSet::new(k, &(k - t + 1..=k).collect::<Vec<_>>())
    }

    /// `Φ_t(n, k)`: k-sets meeting in at least `t` points.
    pub fn phi(t: usize, k: usize) -> Result<Self> {
        Ok(Self::delta(t, k)?.complement())
    }

    /// All `2^k - 2` non-trivial class sets in ascending index order.
    pub fn all_nontrivial(k: usize) -> Vec<ClassSet> {
        (1..(1u32 << k) - 1)
            .map(|i| ClassSet { k, bits: i << 1 })
            .collect()
    }

    /// The `t` with `self == Δ_t`, if any.
    pub fn as_delta(&self) -> Option<usize> {
        (1..self.k).find(|&t| Self::delta(t, self.k).ok() == Some(*self))
    }

    /// The `t` with `self == Φ_t`, if any.
    pub fn as_phi(&self) -> Option<usize> {
        self.complement().as_delta()
    }

    #[inline]
    pub(crate) fn class_bits(&self) -> u32 {
        self.bits
    }
}

impl fmt::Display for ClassSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.classes().iter().map(|j| j.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl fmt::Debug for ClassSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ClassSet{self}")
    }
}

impl Serialize for ClassSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.classes())
    }
}

/// A set of vertices of `J(n, k)`, indexed by colex rank.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    params: SchemeParams,
    members: Bitset,
}

/// Serializes as the list of member blocks, each as 1-based points.
impl Serialize for VertexSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.blocks())
    }
}

impl VertexSet {
    pub fn empty(params: &SchemeParams) -> Self {
        VertexSet {
            params: *params,
            members: Bitset::new(params.v as usize),
        }
    }

    pub fn all(params: &SchemeParams) -> Self {
        VertexSet {
            params: *params,
            members: Bitset::full(params.v as usize),
        }
    }

    pub fn from_ranks(params: &SchemeParams, ranks: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut s = Self::empty(params);
        for r in ranks {
            if r as u64 >= params.v {
                return domain(format!("vertex {r} outside 0..{}", params.v));
            }
            s.members.insert(r);
        }
        Ok(s)
    }

    pub fn from_ksets<'a>(
        params: &SchemeParams,
        sets: impl IntoIterator<Item = &'a KSet>,
    ) -> Result<Self> {
        let mut s = Self::empty(params);
        for b in sets {
            if b.n() != params.n || b.k() != params.k {
                return domain(format!(
                    "{b:?} is not a {}-subset of 1..={}",
                    params.k, params.n
                ));
            }
            s.members.insert(b.rank() as usize);
        }
        Ok(s)
    }


    pub fn params(&self) -> &SchemeParams {
        &self.params
    }

    pub fn members(&self) -> &Bitset {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.count()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, r: usize) -> bool {
        self.members.contains(r)
    }

    pub fn insert(&mut self, r: usize) {
        self.members.insert(r);
    }

    pub fn ranks(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter()
    }

    pub fn ksets(&self) -> Vec<KSet> {
        self.ranks()
            .map(|r| KSet::unrank(r as u64, &self.params).expect("rank in range"))
            .collect()
    }

    /// Sorted 1-based blocks, in rank order.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        self.ksets().iter().map(|s| s.elements()).collect()
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.members.is_disjoint(&other.members)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.ksets()).finish()
    }
}

#[derive(Debug, Clone, Copy)]
pub struct GraphOptions {
    pub memory_budget_bytes: u64,
}

impl Default for GraphOptions {
    fn default() -> Self {
        GraphOptions {
            memory_budget_bytes: DEFAULT_MEMORY_BUDGET,
        }
    }
}

/// Exact spectral summary of a union graph.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Spectrum {
    pub degree: u64,
    /// `λ_i = Σ_{j∈I} P_j(i)` for `i = 0..=k`, with multiplicity `m_i`
    #[serde(serialize_with = "crate::ser::ints")]
    pub eigenvalues: Vec<BigInt>,
    /// Smallest eigenvalue over all `i`.
    #[serde(serialize_with = "crate::ser::int")]
    pub tau: BigInt,
}

/// `Γ_I(n, k)` with bitset adjacency rows indexed by colex rank.
#[derive(Clone)]
pub struct SchemeGraph {
    params: SchemeParams,
    classes: ClassSet,
    masks: Vec<u64>,
    rows: Vec<Bitset>,
    spectrum: Spectrum,
    eigen: EigenMatrices,
}

impl fmt::Debug for SchemeGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SchemeGraph")
            .field("n", &self.params.n)
            .field("k", &self.params.k)
            .field("classes", &self.classes)
            .field("spectrum", &self.spectrum)
            .finish()
    }
}

/// Bytes needed for the adjacency rows of a `v`-vertex graph.
pub fn adjacency_bytes(v: u64) -> u128 {
    v as u128 * (v as u128).div_ceil(64) * 8
}

/// Spectrum of `Γ_I(n, k)` from the eigenvalue matrices alone, without building adjacency.
pub fn graph_spectrum(params: &SchemeParams, classes: &ClassSet) -> Result<Spectrum> {
    if classes.k() != params.k {
        return domain(format!("class set is for k={}, scheme has k={}", classes.k(), params.k));
    }
    Ok(spectrum_of(&eigen_matrices(params)?, classes))
}

fn spectrum_of(eigen: &EigenMatrices, classes: &ClassSet) -> Spectrum {
    let eigenvalues = eigen.union_eigenvalues(&classes.classes());
    let tau = eigenvalues.iter().min().cloned().expect("k + 1 eigenvalues");
    let degree: BigInt = eigenvalues[0].clone();
    Spectrum {
        degree: u64::try_from(&degree).expect("degree fits u64"),
        eigenvalues,
        tau,
    }
}

/// Builds `Γ_I(n, k)`. Empty and full `I` are allowed here; see [`SchemeGraph::is_trivial`].
pub fn build_graph(
    params: &SchemeParams,
    classes: &ClassSet,
    opts: &GraphOptions,
) -> Result<SchemeGraph> {
    if classes.k() != params.k {
        return domain(format!("class set is for k={}, scheme has k={}", classes.k(), params.k));
    }
    let needed = adjacency_bytes(params.v);
    if needed > opts.memory_budget_bytes as u128 {
        return Err(Error::Resource {
            what: format!("adjacency of Γ_{classes}({}, {})", params.n, params.k),
            needed,
            budget: opts.memory_budget_bytes as u128,
        });
    }
    let eigen = eigen_matrices(params)?;
    let spectrum = spectrum_of(&eigen, classes);
    let v = params.v as usize;
    let k = params.k as u32;
    let masks: Vec<u64> = (0..params.v).map(|r| unrank_mask(r, params.k)).collect();
    let bits = classes.class_bits();
    let rows: Vec<Bitset> = masks
        .par_iter()
        .map(|&a| {
            let mut row = Bitset::new(v);
            for (s, &b) in masks.iter().enumerate() {
                let class = k - (a & b).count_ones();
                if bits >> class & 1 == 1 {
                    row.insert(s);
                }
            }
            row
        })
        .collect();
    let g = SchemeGraph {
        params: *params,
        classes: *classes,
        masks,
        rows,
        spectrum,
        eigen,
    };
    g.self_check()?;
    Ok(g)
}

impl SchemeGraph {
    fn self_check(&self) -> Result<()> {
        let d = self.spectrum.degree as usize;
        if let Some((r, row)) = self.rows.iter().enumerate().find(|(_, row)| row.count() != d) {
            return Err(Error::Consistency(format!(
                "row {r} has degree {} but valencies give {d}",
                row.count()
            )));
        }
        if self.rows.iter().enumerate().any(|(r, row)| row.contains(r)) {
            return Err(Error::Consistency("adjacency has a loop".into()));
        }
        if self.classes.is_nontrivial() && !self.spectrum.tau.is_negative() {
            return Err(Error::Consistency(format!(
                "non-trivial graph Γ_{} has tau = {}",
                self.classes, self.spectrum.tau
            )));
        }
        Ok(())
    }

    pub fn params(&self) -> &SchemeParams {
        &self.params
    }

    pub fn classes(&self) -> &ClassSet {
        &self.classes
    }

    pub fn v(&self) -> usize {
        self.params.v as usize
    }

    pub fn degree(&self) -> u64 {
        self.spectrum.degree
    }

    pub fn spectrum(&self) -> &Spectrum {
        &self.spectrum
    }

    pub fn eigenvalues(&self) -> &[BigInt] {
        &self.spectrum.eigenvalues
    }

    pub fn tau(&self) -> &BigInt {
        &self.spectrum.tau
    }

    pub fn eigen(&self) -> &EigenMatrices {
        &self.eigen
    }

    pub fn is_trivial(&self) -> bool {
        !self.classes.is_nontrivial()
    }

    #[inline]
    pub fn row(&self, r: usize) -> &Bitset {
        &self.rows[r]
    }

    pub fn rows(&self) -> &[Bitset] {
        &self.rows
    }

    #[inline]
    pub fn adjacent(&self, r: usize, s: usize) -> bool {
        self.rows[r].contains(s)
    }

    /// Bitmask of the k-set at rank `r`.
    #[inline]
    pub fn vertex_mask(&self, r: usize) -> u64 {
        self.masks[r]
    }

    pub fn masks(&self) -> &[u64] {
        &self.masks
    }

    pub fn vertex(&self, r: usize) -> KSet {
        KSet::from_mask(self.params.n, self.masks[r]).expect("valid mask")
    }

    /// The complement graph `Γ_{{1..k}∖I}`.
    pub fn complement(&self) -> Result<SchemeGraph> {
        let classes = self.classes.complement();
        let v = self.v();
        let rows: Vec<Bitset> = self
            .rows
            .par_iter()
            .enumerate()
            .map(|(r, row)| {
                let mut c = row.complement();
                c.remove(r);
                c
            })
            .collect();
        let spectrum = spectrum_of(&self.eigen, &classes);
        // λ̄_0 = v - 1 - λ_0 and λ̄_i = -1 - λ_i for i > 0
        for (i, (a, b)) in self
            .spectrum
            .eigenvalues
            .iter()
            .zip(&spectrum.eigenvalues)
            .enumerate()
        {
            let sum = a + b;
            let want = if i == 0 { BigInt::from(v as u64 - 1) } else { BigInt::from(-1) };
            if sum != want {
                return Err(Error::Consistency(format!(
                    "complement eigenvalue {i}: {a} + {b} != {want}"
                )));
            }
        }
        let g = SchemeGraph {
            params: self.params,
            classes,
            masks: self.masks.clone(),
            rows,
            spectrum,
            eigen: self.eigen.clone(),
        };
        g.self_check()?;
        Ok(g)
    }

    /// Whether `set` is a clique (pairwise adjacent), checked on raw adjacency.
    pub fn is_clique(&self, set: &VertexSet) -> bool {
        let m: Vec<usize> = set.ranks().collect();
        m.iter()
            .enumerate()
            .all(|(a, &r)| m[a + 1..].iter().all(|&s| self.adjacent(r, s)))
    }

    /// Whether `set` is a coclique (pairwise non-adjacent), checked on raw adjacency.
    pub fn is_coclique(&self, set: &VertexSet) -> bool {
        set.ranks().all(|r| self.rows[r].is_disjoint(set.members()))
    }

    /// First adjacent pair inside `set`, if any.
    pub fn first_edge_within(&self, set: &VertexSet) -> Option<(usize, usize)> {
        set.ranks().find_map(|r| {
            let mut both = self.rows[r].clone();
            both.intersect_with(set.members());
            both.first().map(|s| (r.min(s), r.max(s)))
        })
    }

    /// First non-adjacent pair of distinct vertices inside `set`, if any.
    pub fn first_non_edge_within(&self, set: &VertexSet) -> Option<(usize, usize)> {
        let m: Vec<usize> = set.ranks().collect();
        for (a, &r) in m.iter().enumerate() {
            for &s in &m[a + 1..] {
                if !self.adjacent(r, s) {
                    return Some((r, s));
                }
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::intersection_class;

    fn graph(n: usize, k: usize, classes: &[usize]) -> SchemeGraph {
        let p = SchemeParams::new(n, k).unwrap();
        build_graph(&p, &ClassSet::new(k, classes).unwrap(), &GraphOptions::default()).unwrap()
    }

    #[test]
    fn class_sets() {
        assert_eq!(ClassSet::delta(2, 4).unwrap().classes(), vec![3, 4]);
        assert_eq!(ClassSet::phi(2, 4).unwrap().classes(), vec![1, 2]);
        assert_eq!(ClassSet::all_nontrivial(4).len(), 14);
        assert_eq!(ClassSet::new(4, &[1, 3]).unwrap().index(), 0b101);
        assert_eq!(ClassSet::new(4, &[2, 3, 4]).unwrap().as_delta(), Some(3));
        assert_eq!(ClassSet::new(4, &[1]).unwrap().as_phi(), Some(3));
        assert!(ClassSet::new(4, &[0]).is_err());
        assert!(ClassSet::new(4, &[5]).is_err());
        assert_eq!(ClassSet::new(4, &[1, 3]).unwrap().to_string(), "{1,3}");
    }

    #[test]
    fn delta2_degree() {
        let g = graph(10, 4, &[3, 4]);
        assert_eq!(g.degree(), 80 + 15);
    }

    #[test]
    fn gamma2_spectrum() {
        let g = graph(10, 4, &[2]);
        let want: Vec<BigInt> = [90, 15, -9, -6, 6].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(g.eigenvalues(), &want[..]);
        assert_eq!(g.tau(), &BigInt::from(-9));
    }

    #[test]
    fn complete_graph() {
        let g = graph(9, 4, &[1, 2, 3, 4]);
        assert_eq!(g.degree(), 125);
        assert!(g.is_trivial());
    }

    #[test]
    fn adjacency_matches_definition() {
        for (n, k, cls) in [(9, 4, vec![1, 3]), (8, 3, vec![2]), (10, 3, vec![1, 3])] {
            let g = graph(n, k, &cls);
            let set = ClassSet::new(k, &cls).unwrap();
            for r in 0..g.v() {
                for s in 0..g.v() {
                    let c = intersection_class(&g.vertex(r), &g.vertex(s)).unwrap();
                    assert_eq!(g.adjacent(r, s), c != 0 && set.contains(c));
                }
            }
        }
    }

    #[test]
    fn trace_is_zero() {
        for k in 2..=4 {
            for n in 2 * k..2 * k + 4 {
                for cls in ClassSet::all_nontrivial(k) {
                    let p = SchemeParams::new(n, k).unwrap();
                    let em = eigen_matrices(&p).unwrap();
                    let ev = em.union_eigenvalues(&cls.classes());
                    let tr: BigInt = ev.iter().zip(&em.multiplicities).map(|(l, m)| l * m).sum();
                    assert_eq!(tr, BigInt::from(0));
                }
            }
        }
    }

    #[test]
    fn complement_relations() {
        let d = graph(9, 4, &[2, 3, 4]);
        let phi = d.complement().unwrap();
        assert_eq!(phi.classes(), &ClassSet::phi(3, 4).unwrap());
        let back = phi.complement().unwrap();
        assert_eq!(back.classes(), d.classes());
        assert_eq!(back.rows(), d.rows());
        let g2 = graph(10, 4, &[2]);
        assert_eq!(g2.complement().unwrap().classes().classes(), vec![1, 3, 4]);
    }

    #[test]
    fn memory_budget_enforced() {
        let p = SchemeParams::new(20, 4).unwrap();
        let err = build_graph(
            &p,
            &ClassSet::new(4, &[1]).unwrap(),
            &GraphOptions {
                memory_budget_bytes: 1000,
            },
        )
        .unwrap_err();
        assert!(matches!(err, Error::Resource { budget: 1000, .. }));
    }
}
