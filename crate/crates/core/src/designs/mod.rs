//! Block families: parsing, Steiner and large-set verification, EKR
//! families, the builtin designs and the small clique = chromatic number
//! witnesses.

mod data;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Duration;

use serde::Serialize;

use crate::bitset::Bitset;
use crate::combinat::{binom_u64, rank_mask, unrank_mask, KSet, SchemeParams};
use crate::error::{domain, Error, Result};
use crate::graphs::{build_graph, ClassSet, GraphOptions, VertexSet};
use crate::search::{exact_cover, verify_colouring, Partition};

/// A family of k-subsets of `{1,..,n}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockFamily {
    pub n: usize,
    pub k: usize,
    pub label: String,
    pub blocks: Vec<KSet>,
}

impl Serialize for BlockFamily {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("BlockFamily", 4)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("k", &self.k)?;
        st.serialize_field("label", &self.label)?;
        st.serialize_field("blocks", &self.block_lists())?;
        st.end()
    }
}

impl BlockFamily {
    /// Blocks given as lists of 1-based points. Blocks must be distinct k-sets.
    pub fn new(n: usize, k: usize, label: &str, blocks: &[Vec<usize>]) -> Result<Self> {
        let ks = blocks
            .iter()
            .map(|b| KSet::from_elements(n, b))
            .collect::<Result<Vec<_>>>()?;
        Self::from_ksets(n, k, label, ks)
    }

    pub fn from_ksets(n: usize, k: usize, label: &str, blocks: Vec<KSet>) -> Result<Self> {
        SchemeParams::new(n, k)?;
        let mut seen = BTreeSet::new();
        for b in &blocks {
            if b.n() != n || b.k() != k {
                return domain(format!("block {b:?} is not a {k}-subset of 1..={n}"));
            }
            if !seen.insert(b.mask()) {
                return domain(format!("block {b:?} repeated"));
            }
        }
        Ok(BlockFamily {
            n,
            k,
            label: label.to_string(),
            blocks,
        })
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn block_lists(&self) -> Vec<Vec<usize>> {
        self.blocks.iter().map(KSet::elements).collect()
    }

    pub fn params(&self) -> Result<SchemeParams> {
        SchemeParams::new(self.n, self.k)
    }

    pub fn vertex_set(&self) -> Result<VertexSet> {
        VertexSet::from_ksets(&self.params()?, &self.blocks)
    }

    pub fn from_vertex_set(label: &str, set: &VertexSet) -> Self {
        let p = set.params();
        BlockFamily {
            n: p.n,
            k: p.k,
            label: label.to_string(),
            blocks: set.ksets(),
        }
    }

    /// Sizes `|A∩B|` realized by distinct blocks.
    pub fn intersection_profile(&self) -> Vec<usize> {
        let mut sizes = BTreeSet::new();
        for (i, a) in self.blocks.iter().enumerate() {
            for b in &self.blocks[i + 1..] {
                sizes.insert((a.mask() & b.mask()).count_ones() as usize);
            }
        }
        sizes.into_iter().collect()
    }

    /// Parses the block-family text format: a header `n k label`, then one
    /// block per line as 1-based points. `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut header: Option<(usize, usize, String)> = None;
        let mut blocks = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let perr = |msg: String| Error::Parse { line: line_no, msg };
            match &header {
                None => {
                    let mut parts = line.split_whitespace();
                    let mut num = |what: &str| -> Result<usize> {
                        parts
                            .next()
                            .ok_or_else(|| perr(format!("header is missing {what}")))?
                            .parse()
                            .map_err(|e| perr(format!("bad {what}: {e}")))
                    };
                    let n = num("n")?;
                    let k = num("k")?;
                    let label = parts.collect::<Vec<_>>().join(" ");
                    SchemeParams::new(n, k).map_err(|e| perr(e.to_string()))?;
                    header = Some((n, k, label));
                }
                Some((n, k, _)) => {
                    let pts = line
                        .split_whitespace()
                        .map(|t| t.parse::<usize>().map_err(|e| perr(format!("bad point {t:?}: {e}"))))
                        .collect::<Result<Vec<_>>>()?;
                    if pts.len() != *k {
                        return Err(perr(format!("block has {} points, expected {k}", pts.len())));
                    }
                    blocks.push(KSet::from_elements(*n, &pts).map_err(|e| perr(e.to_string()))?);
                }
            }
        }
        let (n, k, label) = header.ok_or(Error::Parse {
            line: 0,
            msg: "empty input, expected a header `n k label`".into(),
        })?;
        Self::from_ksets(n, k, &label, blocks)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} {} {}\n", self.n, self.k, self.label);
        for b in &self.blocks {
            let pts: Vec<String> = b.elements().iter().map(|p| p.to_string()).collect();
            let _ = writeln!(out, "{}", pts.join(" "));
        }
        out
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_text())?;
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SteinerFailure {
    pub t_set: Vec<usize>,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SteinerCheck {
    pub t: usize,
    pub holds: bool,
    /// `C(n, t) / C(k, t)` when integral.
    pub expected_blocks: Option<u64>,
    pub block_count: usize,
    /// First t-set (colex order) not covered exactly once.
    pub failure: Option<SteinerFailure>,
}

fn subsets_of_mask(mask: u64, t: usize, out: &mut Vec<u64>) {
    let pts: Vec<u32> = (0..64).filter(|b| mask >> b & 1 == 1).collect();
    let m = pts.len();
    if t > m {
        return;
    }
    let mut idx: Vec<usize> = (0..t).collect();
    loop {
        out.push(idx.iter().fold(0u64, |acc, &i| acc | 1 << pts[i]));
        let mut i = t;
        while i > 0 && idx[i - 1] == m - t + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return;
        }
        idx[i - 1] += 1;
        for j in i..t {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Exhaustively checks that every t-subset lies in exactly one block.
pub fn verify_steiner(fam: &BlockFamily, t: usize) -> Result<SteinerCheck> {
    if t == 0 || t >= fam.k {
        return domain(format!("need 0 < t < k, got t={t}, k={}", fam.k));
    }
    let total = binom_u64(fam.n, t) as usize;
    let mut counts = vec![0usize; total];
    let mut subs = Vec::new();
    for b in &fam.blocks {
        subs.clear();
        subsets_of_mask(b.mask(), t, &mut subs);
        for &s in &subs {
            counts[rank_mask(s) as usize] += 1;
        }
    }
    let failure = counts.iter().position(|&c| c != 1).map(|r| SteinerFailure {
        t_set: KSet::from_mask(fam.n, unrank_mask(r as u64, t))
            .expect("rank in range")
            .elements(),
        count: counts[r],
    });
    let den = binom_u64(fam.k, t);
    let expected_blocks = (total as u64).is_multiple_of(den).then(|| total as u64 / den);
    let count_ok = expected_blocks == Some(fam.blocks.len() as u64);
    Ok(SteinerCheck {
        t,
        holds: failure.is_none() && count_ok,
        expected_blocks,
        block_count: fam.blocks.len(),
        failure,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DesignReport {
    pub n: usize,
    pub k: usize,
    pub label: String,
    pub block_count: usize,
    pub is_steiner_for: Vec<usize>,
    pub intersection_profile: Vec<usize>,
}

pub fn design_report(fam: &BlockFamily) -> Result<DesignReport> {
    let mut is_steiner_for = Vec::new();
    for t in 1..fam.k {
        if verify_steiner(fam, t)?.holds {
            is_steiner_for.push(t);
        }
    }
    Ok(DesignReport {
        n: fam.n,
        k: fam.k,
        label: fam.label.clone(),
        block_count: fam.blocks.len(),
        is_steiner_for,
        intersection_profile: fam.intersection_profile(),
    })
}

/// All k-sets containing the t-set `kernel`.
pub fn ekr_coclique(n: usize, k: usize, kernel: &[usize]) -> Result<VertexSet> {
    let params = SchemeParams::new(n, k)?;
    let ker = KSet::from_elements(n, kernel)?;
    if ker.k() >= k {
        return domain(format!("kernel has {} points, needs fewer than k={k}", ker.k()));
    }
    let ranks = (0..params.v)
        .filter(|&r| unrank_mask(r, k) & ker.mask() == ker.mask())
        .map(|r| r as usize);
    VertexSet::from_ranks(&params, ranks)
}

fn fano() -> Vec<Vec<usize>> {
    vec![
        vec![1, 2, 4],
        vec![2, 3, 5],
        vec![3, 4, 6],
        vec![4, 5, 7],
        vec![5, 6, 1],
        vec![6, 7, 2],
        vec![7, 1, 3],
    ]
}

/// Planes of AG(3, 2) on points `1..=8` (point `p` is the vector `p - 1`).
fn sqs8() -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for mask in 0u32..256 {
        if mask.count_ones() == 4 {
            let pts: Vec<usize> = (0..8).filter(|b| mask >> b & 1 == 1).collect();
            if pts.iter().fold(0, |acc, p| acc ^ p) == 0 {
                out.push(pts.iter().map(|p| p + 1).collect());
            }
        }
    }
    out
}

/// Develops the difference set `{0,1,3,9}` modulo 13.
fn s2_4_13() -> Vec<Vec<usize>> {
    (0..13)
        .map(|s| [0, 1, 3, 9].iter().map(|d| (d + s) % 13 + 1).collect())
        .collect()
}

/// Names accepted by [`builtin_design`], with the `t` each one is checked for.
pub const BUILTIN_DESIGNS: [(&str, usize); 5] =
    [("fano", 2), ("sqs8", 3), ("s2_4_13", 2), ("w11", 4), ("w12", 5)];

/// A builtin Steiner system; each is verified before it is returned.
pub fn builtin_design(name: &str) -> Result<BlockFamily> {
    let (n, k, blocks) = match name {
        "fano" => (7, 3, fano()),
        "sqs8" => (8, 4, sqs8()),
        "s2_4_13" => (13, 4, s2_4_13()),
        "w11" => (11, 5, data::W11.iter().map(|b| b.iter().map(|&p| p as usize).collect()).collect()),
        "w12" => (12, 6, data::W12.iter().map(|b| b.iter().map(|&p| p as usize).collect()).collect()),
        _ => return Err(Error::Lookup(format!("no builtin design named {name:?}"))),
    };
    let t = BUILTIN_DESIGNS.iter().find(|(nm, _)| *nm == name).expect("listed").1;
    let fam = BlockFamily::new(n, k, name, &blocks)?;
    let chk = verify_steiner(&fam, t)?;
    if !chk.holds {
        return Err(Error::Consistency(format!("builtin {name} is not an S({t},{k},{n}): {chk:?}")));
    }
    Ok(fam)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LargeSetCheck {
    pub holds: bool,
    pub reason: Option<String>,
}

/// Whether `fams` are Steiner systems `S(t, k, n)` partitioning all k-subsets.
pub fn verify_large_set(fams: &[BlockFamily], t: usize) -> Result<LargeSetCheck> {
    let fail = |reason: String| {
        Ok(LargeSetCheck {
            holds: false,
            reason: Some(reason),
        })
    };
    let Some(first) = fams.first() else {
        return fail("no families".into());
    };
    let params = first.params()?;
    let mut seen = Bitset::new(params.v as usize);
    for (i, f) in fams.iter().enumerate() {
        if (f.n, f.k) != (first.n, first.k) {
            return domain(format!("family {i} is over ({}, {}), not ({}, {})", f.n, f.k, first.n, first.k));
        }
        let chk = verify_steiner(f, t)?;
        if !chk.holds {
            return fail(match chk.failure {
                Some(fl) => format!("family {i} covers {:?} {} times", fl.t_set, fl.count),
                None => format!("family {i} has {} blocks, expected {:?}", chk.block_count, chk.expected_blocks),
            });
        }
        for b in &f.blocks {
            let r = b.rank() as usize;
            if seen.contains(r) {
                return fail(format!("block {b:?} lies in two families"));
            }
            seen.insert(r);
        }
    }
    if let Some(r) = seen.complement().first() {
        let b = KSet::unrank(r as u64, &params)?;
        return fail(format!("block {b:?} lies in no family"));
    }
    Ok(LargeSetCheck {
        holds: true,
        reason: None,
    })
}

/// An explicit clique together with a colouring by that many cocliques.
#[derive(Debug, Clone, Serialize)]
pub struct Witness {
    pub case_id: String,
    pub params: SchemeParams,
    pub classes: ClassSet,
    pub clique: VertexSet,
    pub colouring: Partition,
}

/// Case ids accepted by [`section3_witness`].
pub const WITNESS_CASES: [&str; 5] = ["k3n7", "k3n8", "k4n9", "k5n11", "k5n12"];

#[derive(Debug, Clone, Default)]
pub struct WitnessOptions {
    /// Directory holding the cached overlarge set for `k4n9`.
    pub cache_dir: Option<PathBuf>,
    pub budget: Option<Duration>,
}

fn ksets(n: usize, blocks: &[Vec<usize>]) -> Result<Vec<KSet>> {
    blocks.iter().map(|b| KSet::from_elements(n, b)).collect()
}

fn all_t_subsets_within(params: &SchemeParams, mask: u64) -> Vec<usize> {
    let mut subs = Vec::new();
    subsets_of_mask(mask, params.k, &mut subs);
    subs.into_iter().map(|m| rank_mask(m) as usize).collect()
}

/// A block plus every k-set disjoint from it.
fn block_and_disjoint(params: &SchemeParams, b: &KSet) -> Result<VertexSet> {
    let full = if params.n == 64 { u64::MAX } else { (1u64 << params.n) - 1 };
    let mut ranks = all_t_subsets_within(params, full & !b.mask());
    ranks.push(b.rank() as usize);
    VertexSet::from_ranks(params, ranks)
}

/// The k-subsets of either block of a complementary pair.
fn subsets_of_pair(params: &SchemeParams, a: u64, b: u64) -> Result<VertexSet> {
    let mut ranks = all_t_subsets_within(params, a);
    ranks.extend(all_t_subsets_within(params, b));
    VertexSet::from_ranks(params, ranks)
}

/// Parallel classes of a design whose blocks pair up with their complements.
fn complementary_pairs(fam: &BlockFamily) -> Result<Vec<(u64, u64)>> {
    let full = (1u64 << fam.n) - 1;
    let masks: BTreeSet<u64> = fam.blocks.iter().map(KSet::mask).collect();
    let mut pairs = Vec::new();
    for &m in &masks {
        let c = full & !m;
        if !masks.contains(&c) {
            return Err(Error::Consistency(format!("{} block without its complement", fam.label)));
        }
        if m < c {
            pairs.push((m, c));
        }
    }
    Ok(pairs)
}

/// All distinct copies of SQS(8) on points `1..=8`.
pub fn sqs8_copies() -> Vec<Vec<u64>> {
    let base: Vec<Vec<usize>> = sqs8();
    let mut perm: Vec<usize> = (0..8).collect();
    let mut seen: BTreeSet<Vec<u64>> = BTreeSet::new();
    // Heap's algorithm over all 8! relabelings
    let mut c = [0usize; 8];
    let mut record = |perm: &[usize]| {
        let mut sys: Vec<u64> = base
            .iter()
            .map(|b| b.iter().fold(0u64, |acc, &p| acc | 1 << perm[p - 1]))
            .collect();
        sys.sort_unstable();
        seen.insert(sys);
    };
    record(&perm);
    let mut i = 0;
    while i < 8 {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            record(&perm);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    seen.into_iter().collect()
}

const OVERLARGE_CACHE: &str = "overlarge_9_4.blocks";

/// Nine SQS(8), each omitting a different point of `1..=9`, partitioning
/// the 4-subsets of a 9-set. Found by exact cover over all 270 copies.
pub fn overlarge_set_9(opts: &WitnessOptions) -> Result<Vec<BlockFamily>> {
    if let Some(dir) = &opts.cache_dir {
        let path = dir.join(OVERLARGE_CACHE);
        if path.exists() {
            if let Ok(fams) = read_overlarge(&path) {
                if check_overlarge(&fams)? {
                    return Ok(fams);
                }
            }
        }
    }
    let params = SchemeParams::new(9, 4)?;
    let copies = sqs8_copies();
    if copies.len() != 30 {
        return Err(Error::Consistency(format!("found {} copies of SQS(8), expected 30", copies.len())));
    }
    let mut systems: Vec<Vec<u64>> = Vec::new();
    for omit in 0..9u32 {
        let points: Vec<u32> = (0..9).filter(|&p| p != omit).collect();
        for sys in &copies {
            systems.push(
                sys.iter()
                    .map(|&m| (0..8).filter(|b| m >> b & 1 == 1).fold(0u64, |acc, b| acc | 1 << points[b]))
                    .collect(),
            );
        }
    }
    let options: Vec<Bitset> = systems
        .iter()
        .map(|s| Bitset::from_indices(params.v as usize, s.iter().map(|&m| rank_mask(m) as usize)))
        .collect();
    let cover = exact_cover(params.v as usize, &options, opts.budget);
    let Some(sol) = cover.solution else {
        return Err(if cover.complete {
            Error::Consistency("no overlarge set of SQS(8) exists among the candidates".into())
        } else {
            Error::Resource {
                what: "overlarge set exact cover (time)".into(),
                needed: 0,
                budget: opts.budget.map_or(0, |b| b.as_millis()),
            }
        });
    };
    let mut fams = Vec::new();
    for i in sol {
        let blocks = systems[i]
            .iter()
            .map(|&m| KSet::from_mask(9, m))
            .collect::<Result<Vec<_>>>()?;
        let omitted = (1..=9).find(|&p| blocks.iter().all(|b| !b.contains(p))).expect("omits a point");
        fams.push(BlockFamily::from_ksets(9, 4, &format!("sqs8 omitting {omitted}"), blocks)?);
    }
    fams.sort_by_key(|f| f.label.clone());
    if !check_overlarge(&fams)? {
        return Err(Error::Consistency("exact cover returned an invalid overlarge set".into()));
    }
    if let Some(dir) = &opts.cache_dir {
        // the cache is an optimisation; failing to write it is not an error
        let _ = std::fs::create_dir_all(dir)
            .and_then(|_| std::fs::write(dir.join(OVERLARGE_CACHE), overlarge_text(&fams)));
    }
    Ok(fams)
}

fn overlarge_text(fams: &[BlockFamily]) -> String {
    let mut out = String::from("# nine SQS(8), one block family per section\n");
    for f in fams {
        out.push_str(&f.to_text());
        out.push_str("---\n");
    }
    out
}

fn read_overlarge(path: &Path) -> Result<Vec<BlockFamily>> {
    let text = std::fs::read_to_string(path)?;
    text.split("---\n")
        .filter(|s| s.lines().any(|l| !l.trim().is_empty() && !l.trim_start().starts_with('#')))
        .map(BlockFamily::parse)
        .collect()
}

/// Each family is an S(3,4,8) on the 8 points it uses, and together they partition all 4-sets.
fn check_overlarge(fams: &[BlockFamily]) -> Result<bool> {
    if fams.len() != 9 {
        return Ok(false);
    }
    let params = SchemeParams::new(9, 4)?;
    let mut seen = Bitset::new(params.v as usize);
    for f in fams {
        let used = f.blocks.iter().fold(0u64, |acc, b| acc | b.mask());
        if used.count_ones() != 8 {
            return Ok(false);
        }
        let points: Vec<usize> = (0..9).filter(|b| used >> b & 1 == 1).collect();
        let relabeled: Vec<KSet> = f
            .blocks
            .iter()
            .map(|b| {
                let m = points.iter().enumerate().fold(0u64, |acc, (i, &p)| {
                    if b.mask() >> p & 1 == 1 { acc | 1 << i } else { acc }
                });
                KSet::from_mask(8, m)
            })
            .collect::<Result<_>>()?;
        if !verify_steiner(&BlockFamily::from_ksets(8, 4, "", relabeled)?, 3)?.holds {
            return Ok(false);
        }
        for b in &f.blocks {
            let r = b.rank() as usize;
            if seen.contains(r) {
                return Ok(false);
            }
            seen.insert(r);
        }
    }
    Ok(seen.count() == params.v as usize)
}

/// One of the five small explicit witnesses of clique number = chromatic number.
pub fn section3_witness(case_id: &str) -> Result<Witness> {
    section3_witness_with(case_id, &WitnessOptions::default())
}

pub fn section3_witness_with(case_id: &str, opts: &WitnessOptions) -> Result<Witness> {
    let (n, k, classes): (usize, usize, &[usize]) = match case_id {
        "k3n7" => (7, 3, &[2]),
        "k3n8" => (8, 3, &[2]),
        "k4n9" => (9, 4, &[1, 3]),
        "k5n11" => (11, 5, &[2, 3, 4]),
        "k5n12" => (12, 5, &[2, 3, 4]),
        _ => return Err(Error::Lookup(format!("no witness case {case_id:?}"))),
    };
    let params = SchemeParams::new(n, k)?;
    let classes = ClassSet::new(k, classes)?;
    let (clique, parts) = match case_id {
        "k3n7" => {
            let lines = ksets(7, &fano())?;
            let parts = lines
                .iter()
                .map(|l| block_and_disjoint(&params, l))
                .collect::<Result<Vec<_>>>()?;
            (VertexSet::from_ksets(&params, &lines)?, parts)
        }
        "k3n8" => {
            let lines = ksets(8, &fano())?;
            let sqs = builtin_design("sqs8")?;
            let parts = complementary_pairs(&sqs)?
                .into_iter()
                .map(|(a, b)| subsets_of_pair(&params, a, b))
                .collect::<Result<Vec<_>>>()?;
            (VertexSet::from_ksets(&params, &lines)?, parts)
        }
        "k4n9" => {
            // three triples around a circle; each triple plus one point of the next
            let parts3 = [[1, 2, 3], [4, 5, 6], [7, 8, 9]];
            let mut clique = Vec::new();
            for i in 0..3 {
                for &p in &parts3[(i + 1) % 3] {
                    let mut b = parts3[i].to_vec();
                    b.push(p);
                    clique.push(KSet::from_elements(9, &b)?);
                }
            }
            let parts = overlarge_set_9(opts)?
                .iter()
                .map(BlockFamily::vertex_set)
                .collect::<Result<Vec<_>>>()?;
            (VertexSet::from_ksets(&params, &clique)?, parts)
        }
        "k5n11" => {
            let w11 = builtin_design("w11")?;
            let parts = w11
                .blocks
                .iter()
                .map(|b| block_and_disjoint(&params, b))
                .collect::<Result<Vec<_>>>()?;
            (w11.vertex_set()?, parts)
        }
        _ => {
            let w11 = builtin_design("w11")?;
            let lifted: Vec<KSet> = w11
                .blocks
                .iter()
                .map(|b| KSet::from_mask(12, b.mask()))
                .collect::<Result<_>>()?;
            let w12 = builtin_design("w12")?;
            let parts = complementary_pairs(&w12)?
                .into_iter()
                .map(|(a, b)| subsets_of_pair(&params, a, b))
                .collect::<Result<Vec<_>>>()?;
            (VertexSet::from_ksets(&params, &lifted)?, parts)
        }
    };
    let w = Witness {
        case_id: case_id.to_string(),
        params,
        classes,
        clique,
        colouring: Partition { parts },
    };
    verify_witness(&w)?;
    Ok(w)
}

/// Checks the clique, the colouring, and that they have equal size.
pub fn verify_witness(w: &Witness) -> Result<()> {
    let g = build_graph(&w.params, &w.classes, &GraphOptions::default())?;
    if !g.is_clique(&w.clique) {
        return Err(Error::Consistency(format!("{}: clique is not a clique", w.case_id)));
    }
    if !verify_colouring(&g, &w.colouring)? {
        return Err(Error::Consistency(format!("{}: a colour class is not a coclique", w.case_id)));
    }
    if w.clique.len() != w.colouring.parts.len() {
        return Err(Error::Consistency(format!(
            "{}: clique of size {} but {} colours",
            w.case_id,
            w.clique.len(),
            w.colouring.parts.len()
        )));
    }
    Ok(())
}

/// Steiner system `S(t, k, n)` from the builtins, a trivial partition
/// (`t = 1`), or an exact-cover search within `budget`.
///
/// `Ok(None)` means none was found: either none exists, the divisibility
/// conditions fail, or the search ran out of budget or is too large.
pub fn find_steiner(t: usize, k: usize, n: usize, budget: Option<Duration>) -> Result<Option<BlockFamily>> {
    if t == 0 || t >= k || k >= n {
        return domain(format!("need 0 < t < k < n, got t={t}, k={k}, n={n}"));
    }
    if !crate::combinat::divisibility_conditions(t, k, n)?.holds {
        return Ok(None);
    }
    for (name, bt) in BUILTIN_DESIGNS {
        let fam = builtin_design(name)?;
        if (fam.n, fam.k, bt) == (n, k, t) {
            return Ok(Some(fam));
        }
    }
    if t == 1 {
        let blocks: Vec<Vec<usize>> = (0..n / k).map(|i| (i * k + 1..=i * k + k).collect()).collect();
        return Ok(Some(BlockFamily::new(n, k, &format!("S(1,{k},{n})"), &blocks)?));
    }
    let options_count = binom_u64(n, k);
    if options_count > 20_000 {
        return Ok(None);
    }
    let items = binom_u64(n, t) as usize;
    let mut subs = Vec::new();
    let masks: Vec<u64> = (0..options_count).map(|r| unrank_mask(r, k)).collect();
    let options: Vec<Bitset> = masks
        .iter()
        .map(|&m| {
            subs.clear();
            subsets_of_mask(m, t, &mut subs);
            Bitset::from_indices(items, subs.iter().map(|&s| rank_mask(s) as usize))
        })
        .collect();
    let cover = exact_cover(items, &options, budget);
    let Some(sol) = cover.solution else { return Ok(None) };
    let blocks = sol
        .into_iter()
        .map(|i| KSet::from_mask(n, masks[i]))
        .collect::<Result<Vec<_>>>()?;
    let fam = BlockFamily::from_ksets(n, k, &format!("S({t},{k},{n})"), blocks)?;
    if !verify_steiner(&fam, t)?.holds {
        return Err(Error::Consistency(format!("exact cover returned a non-Steiner family for S({t},{k},{n})")));
    }
    Ok(Some(fam))
}

/// Groups blocks by the points they omit; a summary for reports.
pub fn point_degrees(fam: &BlockFamily) -> BTreeMap<usize, usize> {
    let mut deg = BTreeMap::new();
    for b in &fam.blocks {
        for p in b.elements() {
            *deg.entry(p).or_insert(0) += 1;
        }
    }
    deg
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fano_is_steiner() {
        let f = builtin_design("fano").unwrap();
        let chk = verify_steiner(&f, 2).unwrap();
        assert!(chk.holds);
        assert_eq!(chk.expected_blocks, Some(7));
        assert_eq!(f.intersection_profile(), vec![1]);
    }

    #[test]
    fn partition_and_failures() {
        let f = BlockFamily::new(8, 4, "halves", &[vec![1, 2, 3, 4], vec![5, 6, 7, 8]]).unwrap();
        assert!(verify_steiner(&f, 1).unwrap().holds);
        let bad = BlockFamily::new(5, 3, "bad", &[vec![1, 2, 3], vec![1, 2, 4]]).unwrap();
        let chk = verify_steiner(&bad, 2).unwrap();
        assert!(!chk.holds);
        let fl = chk.failure.unwrap();
        // {1,2} is covered twice but the colex-first failure is an uncovered pair
        assert!(fl.count != 1);
        let twice = (1..=5)
            .flat_map(|a| (a + 1..=5).map(move |b| vec![a, b]))
            .find(|p| bad.blocks.iter().filter(|b| p.iter().all(|&x| b.contains(x))).count() == 2);
        assert_eq!(twice, Some(vec![1, 2]));
        assert!(verify_steiner(&bad, 3).is_err());
        assert!(BlockFamily::new(5, 3, "dup", &[vec![1, 2, 3], vec![3, 2, 1]]).is_err());
    }

    #[test]
    fn builtins() {
        let expect = [("fano", 7, vec![1]), ("sqs8", 14, vec![0, 2]), ("s2_4_13", 13, vec![1]), ("w11", 66, vec![1, 2, 3]), ("w12", 132, vec![0, 2, 3, 4])];
        for (name, count, profile) in expect {
            let f = builtin_design(name).unwrap();
            assert_eq!(f.len(), count, "{name}");
            assert_eq!(f.intersection_profile(), profile, "{name}");
        }
        assert!(matches!(builtin_design("nope"), Err(Error::Lookup(_))));
        let r = design_report(&builtin_design("w12").unwrap()).unwrap();
        // S(5,6,12) is also a t-design for smaller t, but not Steiner for t < 5
        assert_eq!(r.is_steiner_for, vec![5]);
    }

    #[test]
    fn ekr_families() {
        assert_eq!(ekr_coclique(10, 4, &[1, 2, 3]).unwrap().len(), 7);
        assert_eq!(ekr_coclique(9, 4, &[1, 2]).unwrap().len(), 21);
        assert_eq!(ekr_coclique(5, 4, &[1, 2, 3]).unwrap().len(), 2);
        assert!(ekr_coclique(9, 4, &[1, 2, 3, 4]).is_err());
        let p = SchemeParams::new(9, 4).unwrap();
        let delta2 = build_graph(&p, &ClassSet::delta(2, 4).unwrap(), &GraphOptions::default()).unwrap();
        let phi2 = build_graph(&p, &ClassSet::phi(2, 4).unwrap(), &GraphOptions::default()).unwrap();
        let e = ekr_coclique(9, 4, &[1, 2]).unwrap();
        assert!(delta2.is_coclique(&e) && phi2.is_clique(&e));
    }

    #[test]
    fn text_round_trip() {
        let f = builtin_design("s2_4_13").unwrap();
        let text = f.to_text();
        assert_eq!(BlockFamily::parse(&text).unwrap(), f);
        let with_comments = "# a comment\n\n7 3 my fano\n1 2 4 # first line\n2 3 5\n";
        let g = BlockFamily::parse(with_comments).unwrap();
        assert_eq!((g.n, g.k, g.label.as_str(), g.len()), (7, 3, "my fano", 2));
        assert!(matches!(BlockFamily::parse("7 3 x\n1 2\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(BlockFamily::parse("7 3 x\n1 2 9\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(BlockFamily::parse(""), Err(Error::Parse { .. })));
    }

    #[test]
    fn large_sets() {
        // every 4-set with its complement: 35 copies of S(1,4,8)
        let p = SchemeParams::new(8, 4).unwrap();
        let mut fams = Vec::new();
        for r in 0..p.v {
            let m = unrank_mask(r, 4);
            let c = 0xff & !m;
            if m < c {
                let blocks = vec![KSet::from_mask(8, m).unwrap(), KSet::from_mask(8, c).unwrap()];
                fams.push(BlockFamily::from_ksets(8, 4, "pair", blocks).unwrap());
            }
        }
        assert_eq!(fams.len(), 35);
        assert!(verify_large_set(&fams, 1).unwrap().holds);
        let chk = verify_large_set(&fams[1..], 1).unwrap();
        assert!(!chk.holds && chk.reason.unwrap().contains("no family"));
        let all = BlockFamily::from_ksets(8, 4, "all", (0..70).map(|r| KSet::unrank(r, &p).unwrap()).collect()).unwrap();
        assert!(!verify_large_set(&[all], 3).unwrap().holds);
    }

    #[test]
    fn small_witnesses() {
        for (case, size) in [("k3n7", 7), ("k3n8", 7), ("k5n11", 66), ("k5n12", 66)] {
            let w = section3_witness(case).unwrap();
            assert_eq!(w.clique.len(), size);
            assert_eq!(w.colouring.parts.len(), size);
        }
        assert!(matches!(section3_witness("k9n9"), Err(Error::Lookup(_))));
    }

    #[test]
    fn overlarge_set() {
        assert_eq!(sqs8_copies().len(), 30);
        let fams = overlarge_set_9(&WitnessOptions::default()).unwrap();
        assert_eq!(fams.len(), 9);
        // each family omits a point, so this is not a large set of S(3,4,9)
        let chk = verify_large_set(&fams, 3).unwrap();
        assert!(!chk.holds);
        let w = section3_witness("k4n9").unwrap();
        assert_eq!((w.clique.len(), w.colouring.parts.len()), (9, 9));
    }

    #[test]
    fn overlarge_cache_round_trip() {
        let dir = std::env::temp_dir().join(format!("jscheme-cache-test-{}", std::process::id()));
        let opts = WitnessOptions { cache_dir: Some(dir.clone()), budget: None };
        let a = overlarge_set_9(&opts).unwrap();
        assert!(dir.join(OVERLARGE_CACHE).exists());
        let b = overlarge_set_9(&opts).unwrap();
        assert_eq!(a, b);
        let _ = std::fs::remove_dir_all(dir);
    }

    #[test]
    fn steiner_construction() {
        let s = find_steiner(3, 4, 10, None).unwrap().unwrap();
        assert_eq!(s.len(), 30);
        assert!(find_steiner(3, 4, 9, None).unwrap().is_none());
        assert_eq!(find_steiner(1, 4, 12, None).unwrap().unwrap().len(), 3);
        assert_eq!(find_steiner(2, 4, 13, None).unwrap().unwrap().label, "s2_4_13");
    }
}
