//! Kromatic symmetric functions: the set-coloring analogue of the CSF,
//! where every vertex receives a nonempty *set* of colors and adjacent
//! vertices get disjoint sets.
//!
//! Three expansions are computed:
//!
//! * the exact finite `m̃`-bar expansion, with `[m̃-bar_λ]` counting stable
//!   set covers of weight type λ;
//! * a truncated monomial expansion by direct set-coloring enumeration (the
//!   oracle);
//! * the `ω(p̄′)` expansion, whose coefficients count covers by distinct
//!   Lyndon heaps with sizes the parts of λ.
//!
//! Truncation is explicit everywhere: a capped series knows nothing above
//! its cap, and comparisons always report the cap they were made at.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Mutex;

use num::{One, Zero};

use crate::error::KromaticError;
use crate::graph::{VertexMask, WeightedGraph};
use crate::partition::Partition;
use crate::scalar::{rat_int, Rational};

/// Expansion bases for K-series.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum KBasis {
    /// The K-theoretic augmented monomials (KSFs of weighted cliques);
    /// expansions of KSFs in this basis are exact and finite.
    MTildeBar,
    /// The multiplicative `ω(p̄′_λ)` family.
    OmegaPBarPrime,
    /// Plain monomials, necessarily truncated.
    MTruncated,
}

impl KBasis {
    pub fn name(self) -> &'static str {
        match self {
            KBasis::MTildeBar => "mbar",
            KBasis::OmegaPBarPrime => "omegap",
            KBasis::MTruncated => "m",
        }
    }
}

/// A sparse K-series: partition-indexed rational coefficients with a basis
/// tag and an optional truncation cap.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct KSeries {
    basis: KBasis,
    cap: Option<u32>,
    terms: BTreeMap<Partition, Rational>,
}

impl KSeries {
    pub fn zero(basis: KBasis, cap: Option<u32>) -> KSeries {
        KSeries { basis, cap, terms: BTreeMap::new() }
    }

    pub fn basis(&self) -> KBasis {
        self.basis
    }

    pub fn cap(&self) -> Option<u32> {
        self.cap
    }

    pub fn coeff(&self, lambda: &Partition) -> Rational {
        self.terms.get(lambda).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, lambda: Partition, coef: Rational) {
        if coef.is_zero() {
            return;
        }
        if let Some(cap) = self.cap {
            if lambda.size() > cap {
                return;
            }
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(lambda) {
            Entry::Vacant(v) => {
                v.insert(coef);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coef;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn scale(&self, c: &Rational) -> KSeries {
        if c.is_zero() {
            return KSeries::zero(self.basis, self.cap);
        }
        KSeries {
            basis: self.basis,
            cap: self.cap,
            terms: self.terms.iter().map(|(l, v)| (l.clone(), v * c)).collect(),
        }
    }

    pub fn add(&self, other: &KSeries) -> KSeries {
        assert_eq!(self.basis, other.basis, "K-series basis mismatch");
        let cap = match (self.cap, other.cap) {
            (None, x) | (x, None) => x,
            (Some(a), Some(b)) => Some(a.min(b)),
        };
        let mut out = KSeries::zero(self.basis, cap);
        for (l, c) in self.terms.iter().chain(other.terms.iter()) {
            out.add_term(l.clone(), c.clone());
        }
        out
    }

    /// Index-union product in the `m̃`-bar basis (the join multiplication).
    pub fn multiply_mbar(&self, other: &KSeries) -> KSeries {
        assert_eq!(self.basis, KBasis::MTildeBar);
        assert_eq!(other.basis, KBasis::MTildeBar);
        let cap = match (self.cap, other.cap) {
            (None, x) | (x, None) => x,
            (Some(a), Some(b)) => Some(a.min(b)),
        };
        let mut out = KSeries::zero(KBasis::MTildeBar, cap);
        for (l, cl) in self.terms.iter() {
            for (m, cm) in other.terms.iter() {
                out.add_term(l.union(m), cl * cm);
            }
        }
        out
    }

    /// Truncated product in the monomial basis.
    pub fn multiply_monomial(&self, other: &KSeries, cap: u32) -> KSeries {
        assert_eq!(self.basis, KBasis::MTruncated);
        assert_eq!(other.basis, KBasis::MTruncated);
        let mut out = KSeries::zero(KBasis::MTruncated, Some(cap));
        for (l, cl) in self.terms.iter() {
            for (m, cm) in other.terms.iter() {
                if l.size() + m.size() > cap {
                    continue;
                }
                for (nu, count) in monomial_product(l, m) {
                    out.add_term(nu, cl * cm * rat_int(count as i64));
                }
            }
        }
        out
    }

    /// Termwise comparison up to the common cap.
    pub fn compare(&self, other: &KSeries) -> KComparison {
        let cap = match (self.cap, other.cap) {
            (None, x) | (x, None) => x,
            (Some(a), Some(b)) => Some(a.min(b)),
        };
        let within = |l: &Partition| cap.map_or(true, |c| l.size() <= c);
        for (l, c) in self.terms.iter() {
            if within(l) && other.coeff(l) != *c {
                return KComparison { equal: false, up_to: cap, first_diff: Some(l.clone()) };
            }
        }
        for (l, c) in other.terms.iter() {
            if within(l) && self.coeff(l) != *c {
                return KComparison { equal: false, up_to: cap, first_diff: Some(l.clone()) };
            }
        }
        KComparison { equal: true, up_to: cap, first_diff: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KComparison {
    pub equal: bool,
    pub up_to: Option<u32>,
    pub first_diff: Option<Partition>,
}

impl fmt::Display for KSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use num::Signed;
        if self.terms.is_empty() {
            write!(f, "0")?;
        } else {
            for (i, (l, c)) in self.terms.iter().enumerate() {
                let neg = c.is_negative();
                let abs = if neg { -c.clone() } else { c.clone() };
                if i == 0 {
                    if neg {
                        write!(f, "-")?;
                    }
                } else if neg {
                    write!(f, " - ")?;
                } else {
                    write!(f, " + ")?;
                }
                if abs.is_one() {
                    write!(f, "{}{}", self.basis.name(), l)?;
                } else {
                    write!(f, "{}*{}{}", abs, self.basis.name(), l)?;
                }
            }
        }
        if let Some(cap) = self.cap {
            write!(f, " (+O(deg>{}))", cap)?;
        }
        Ok(())
    }
}

// ----------------------------------------------------------------------
// Monomial products (truncated)
// ----------------------------------------------------------------------

static MONOMIAL_PRODUCT_CACHE: Mutex<
    Option<HashMap<(Partition, Partition), Vec<(Partition, u64)>>>,
> = Mutex::new(None);

/// `m_λ · m_μ = Σ_ν c^ν m_ν`, where `c^ν` counts pairs of exponent vectors
/// `(a, b)` on `ℓ(ν)` slots with `a + b = ν`, the nonzeros of `a` forming λ
/// and those of `b` forming μ.
pub fn monomial_product(lambda: &Partition, mu: &Partition) -> Vec<(Partition, u64)> {
    {
        let guard = MONOMIAL_PRODUCT_CACHE.lock().unwrap();
        if let Some(map) = guard.as_ref() {
            if let Some(v) = map.get(&(lambda.clone(), mu.clone())) {
                return v.clone();
            }
        }
    }
    let total = lambda.size() + mu.size();
    let max_len = lambda.len() + mu.len();
    let mut out = Vec::new();
    for nu in Partition::all_of(total) {
        if nu.len() > max_len {
            continue;
        }
        let count = placement_count(&nu, lambda, mu);
        if count > 0 {
            out.push((nu, count));
        }
    }
    let mut guard = MONOMIAL_PRODUCT_CACHE.lock().unwrap();
    guard.get_or_insert_with(HashMap::new).insert((lambda.clone(), mu.clone()), out.clone());
    out
}

fn placement_count(nu: &Partition, lambda: &Partition, mu: &Partition) -> u64 {
    fn rec(
        slot: usize,
        nu: &[u32],
        lam_rem: &mut BTreeMap<u32, usize>,
        mu_rem: &mut BTreeMap<u32, usize>,
    ) -> u64 {
        if slot == nu.len() {
            let done = lam_rem.values().all(|&c| c == 0) && mu_rem.values().all(|&c| c == 0);
            return u64::from(done);
        }
        let target = nu[slot];
        let mut total = 0;
        // a_slot is 0 or one of the distinct remaining parts of λ
        let mut candidates: Vec<u32> = vec![0];
        candidates.extend(lam_rem.iter().filter(|&(_, &c)| c > 0).map(|(&v, _)| v));
        for a in candidates {
            if a > target {
                continue;
            }
            let b = target - a;
            if a == 0 && b == 0 {
                continue;
            }
            if b > 0 && mu_rem.get(&b).map_or(true, |&c| c == 0) {
                continue;
            }
            if a > 0 {
                *lam_rem.get_mut(&a).unwrap() -= 1;
            }
            if b > 0 {
                *mu_rem.get_mut(&b).unwrap() -= 1;
            }
            total += rec(slot + 1, nu, lam_rem, mu_rem);
            if a > 0 {
                *lam_rem.get_mut(&a).unwrap() += 1;
            }
            if b > 0 {
                *mu_rem.get_mut(&b).unwrap() += 1;
            }
        }
        total
    }
    let mut lam_rem: BTreeMap<u32, usize> = lambda.multiplicities();
    let mut mu_rem: BTreeMap<u32, usize> = mu.multiplicities();
    rec(0, nu.parts(), &mut lam_rem, &mut mu_rem)
}

// ----------------------------------------------------------------------
// KSF expansions
// ----------------------------------------------------------------------

/// Exact `m̃`-bar expansion: `[m̃-bar_λ]` is the number of covers of the
/// vertex set by distinct nonempty stable sets with weight type λ.
pub fn ksf_mbar(g: &WeightedGraph) -> Result<KSeries, KromaticError> {
    if g.vertex_count() > 6 {
        return Err(KromaticError::Bound {
            op: "ksf_mbar",
            detail: format!("{} vertices > 6", g.vertex_count()),
        });
    }
    let covers = g.stable_set_covers().map_err(KromaticError::Graph)?;
    let mut out = KSeries::zero(KBasis::MTildeBar, None);
    for (lambda, count) in covers {
        out.add_term(lambda, rat_int(count as i64));
    }
    Ok(out)
}

/// Truncated monomial expansion by direct enumeration of proper set
/// colorings with colors in `1..=cap` and total degree ≤ `cap` (that many
/// colors suffice for every monomial of degree ≤ cap).
pub fn ksf_oracle(g: &WeightedGraph, cap: u32) -> Result<KSeries, KromaticError> {
    if g.vertex_count() > 5 {
        return Err(KromaticError::Bound {
            op: "ksf_oracle",
            detail: format!("{} vertices > 5", g.vertex_count()),
        });
    }
    if cap < g.total_weight() {
        return Err(KromaticError::Bound {
            op: "ksf_oracle",
            detail: format!("cap {} below total weight {}", cap, g.total_weight()),
        });
    }
    if cap > 10 {
        return Err(KromaticError::Bound { op: "ksf_oracle", detail: format!("cap {} > 10", cap) });
    }
    Ok(set_coloring_expansion(g, cap))
}

/// The enumeration behind [`ksf_oracle`], without the vertex bound: also
/// used for the clique substitution, where color-set disjointness prunes the
/// search to almost nothing.
fn set_coloring_expansion(g: &WeightedGraph, cap: u32) -> KSeries {
    let n = g.vertex_count();
    let mut out = KSeries::zero(KBasis::MTruncated, Some(cap));
    if n == 0 {
        out.add_term(Partition::empty(), Rational::one());
        return out;
    }
    // minimum degree still to be spent after vertex v (≥ 1 color each)
    let mut min_need = vec![0u32; n + 1];
    for v in (0..n).rev() {
        min_need[v] = min_need[v + 1] + g.weight(v);
    }
    let mut chosen: Vec<u32> = vec![0; n];
    rec_color(g, 0, cap, 0, &min_need, &mut chosen, &mut out);
    out
}

fn rec_color(
    g: &WeightedGraph,
    v: usize,
    cap: u32,
    used_degree: u32,
    min_need: &[u32],
    chosen: &mut Vec<u32>,
    out: &mut KSeries,
) {
    let n = g.vertex_count();
    if v == n {
        let mut exps = vec![0u32; cap as usize];
        for u in 0..n {
            for c in 0..cap {
                if chosen[u] & (1 << c) != 0 {
                    exps[c as usize] += g.weight(u);
                }
            }
        }
        // only the weakly decreasing exponent vector reads off an m-coefficient
        if exps.windows(2).all(|w| w[0] >= w[1]) {
            let parts: Vec<u32> = exps.into_iter().filter(|&x| x > 0).collect();
            out.add_term(Partition::of(&parts), Rational::one());
        }
        return;
    }
    let mut forbidden: u32 = 0;
    for u in 0..v {
        if g.has_edge(u, v) {
            forbidden |= chosen[u];
        }
    }
    let avail: u32 = ((1u32 << cap) - 1) & !forbidden;
    let budget = cap - used_degree - min_need[v + 1];
    let max_size = budget / g.weight(v);
    let mut sub = avail;
    while sub != 0 {
        if sub.count_ones() <= max_size {
            chosen[v] = sub;
            rec_color(
                g,
                v + 1,
                cap,
                used_degree + sub.count_ones() * g.weight(v),
                min_need,
                chosen,
                out,
            );
        }
        sub = (sub - 1) & avail;
    }
    chosen[v] = 0;
}

/// Substitutes every `m̃`-bar generator by the set-coloring expansion of its
/// weighted clique, truncated at `cap`; generators above the cap contribute
/// nothing below it and are skipped.
pub fn mbar_to_monomial(f: &KSeries, cap: u32) -> Result<KSeries, KromaticError> {
    assert_eq!(f.basis(), KBasis::MTildeBar, "mbar_to_monomial takes an m̃-bar series");
    if cap > 10 {
        return Err(KromaticError::Bound {
            op: "mbar_to_monomial",
            detail: format!("cap {} > 10", cap),
        });
    }
    let mut out = KSeries::zero(KBasis::MTruncated, Some(cap));
    for (lambda, coef) in f.terms() {
        if lambda.size() > cap {
            continue;
        }
        let clique = crate::graph::special_graph(crate::graph::SpecialKind::Clique, lambda)
            .map_err(KromaticError::Graph)?;
        let expansion = set_coloring_expansion(&clique, cap);
        out = out.add(&expansion.scale(coef));
    }
    Ok(out)
}

/// `ω(p̄′_n)` as a truncated monomial series: expanding the defining product
/// gives coefficient `(−1)^{(n+1)k}` on the rectangular `m_(nᵏ)`.
pub fn omega_p_generator_monomial(n: u32, cap: u32) -> KSeries {
    let mut out = KSeries::zero(KBasis::MTruncated, Some(cap));
    let mut k = 1;
    while n * k <= cap {
        let sign = if (n + 1) * k % 2 == 0 { 1 } else { -1 };
        out.add_term(Partition::of(&vec![n; k as usize]), rat_int(sign));
        k += 1;
    }
    out
}

/// Routes an `ω(p̄′)` expansion to truncated monomials through the closed
/// form of the generators.
pub fn omega_p_to_monomial(f: &KSeries, cap: u32) -> KSeries {
    assert_eq!(f.basis(), KBasis::OmegaPBarPrime);
    let mut out = KSeries::zero(KBasis::MTruncated, Some(cap));
    for (lambda, coef) in f.terms() {
        if lambda.size() > cap {
            continue;
        }
        let mut prod = KSeries::zero(KBasis::MTruncated, Some(cap));
        prod.add_term(Partition::empty(), Rational::one());
        for &part in lambda.parts() {
            prod = prod.multiply_monomial(&omega_p_generator_monomial(part, cap), cap);
        }
        out = out.add(&prod.scale(coef));
    }
    out
}

// ----------------------------------------------------------------------
// Heaps and Lyndon heaps
// ----------------------------------------------------------------------

/// A heap on the host graph, identified by its standard word (the
/// lexicographically maximal word of its commutation class, letters compared
/// by the chosen vertex order).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeapWord {
    /// Standard word as vertex ids.
    pub standard: Vec<String>,
    /// Vertices used at least once.
    pub support: VertexMask,
    /// Word length, counting repetitions.
    pub size: usize,
}

impl fmt::Display for HeapWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.standard.join("·"))
    }
}

const ROTATION_BUDGET: usize = 256;

struct HeapContext<'a> {
    g: &'a WeightedGraph,
    /// rank[v] = position of vertex v in the chosen order.
    rank: Vec<usize>,
}

impl<'a> HeapContext<'a> {
    /// Pieces conflict when equal or adjacent in the host graph.
    fn conflicts(&self, a: u8, b: u8) -> bool {
        a == b || self.g.has_edge(a as usize, b as usize)
    }

    /// Positions with no earlier conflicting position.
    fn source_positions(&self, w: &[u8]) -> Vec<usize> {
        (0..w.len()).filter(|&i| (0..i).all(|j| !self.conflicts(w[j], w[i]))).collect()
    }

    /// Lexicographically maximal word of the commutation class, extracting
    /// the largest available minimal piece greedily. Two occurrences of one
    /// letter are never simultaneously available (they conflict), so the
    /// choice is unique.
    fn standard_word(&self, w: &[u8]) -> Vec<u8> {
        let mut taken = vec![false; w.len()];
        let mut out = Vec::with_capacity(w.len());
        for _ in 0..w.len() {
            let mut best: Option<usize> = None;
            for i in 0..w.len() {
                if taken[i] {
                    continue;
                }
                let available = (0..i).all(|j| taken[j] || !self.conflicts(w[j], w[i]));
                if available {
                    let better = match best {
                        None => true,
                        Some(b) => self.rank[w[i] as usize] > self.rank[w[b] as usize],
                    };
                    if better {
                        best = Some(i);
                    }
                }
            }
            let pick = best.expect("nonempty remainder has an available piece");
            taken[pick] = true;
            out.push(w[pick]);
        }
        out
    }

    fn word_lt(&self, a: &[u8], b: &[u8]) -> bool {
        let ka: Vec<usize> = a.iter().map(|&x| self.rank[x as usize]).collect();
        let kb: Vec<usize> = b.iter().map(|&x| self.rank[x as usize]).collect();
        ka < kb
    }

    /// All words of the commutation class, by closure under swapping
    /// adjacent independent letters.
    fn class_words(&self, w: &[u8]) -> Vec<Vec<u8>> {
        let mut seen: Vec<Vec<u8>> = vec![w.to_vec()];
        let mut queue: Vec<Vec<u8>> = vec![w.to_vec()];
        while let Some(cur) = queue.pop() {
            for i in 0..cur.len().saturating_sub(1) {
                if !self.conflicts(cur[i], cur[i + 1]) {
                    let mut next = cur.clone();
                    next.swap(i, i + 1);
                    if !seen.contains(&next) {
                        seen.push(next.clone());
                        queue.push(next);
                    }
                }
            }
        }
        seen
    }

    /// A heap is periodic when some word of its class is a proper power.
    fn is_periodic(&self, w: &[u8]) -> bool {
        let n = w.len();
        self.class_words(w)
            .iter()
            .any(|word| (1..n).filter(|d| n % d == 0).any(|d| (d..n).all(|i| word[i] == word[i - d])))
    }

    /// Forward closure of a position under the dependency order.
    fn up_set(&self, w: &[u8], start: usize) -> Vec<bool> {
        let n = w.len();
        let mut in_set = vec![false; n];
        in_set[start] = true;
        loop {
            let mut grew = false;
            for i in 0..n {
                if !in_set[i] {
                    continue;
                }
                for j in (i + 1)..n {
                    if !in_set[j] && self.conflicts(w[i], w[j]) {
                        in_set[j] = true;
                        grew = true;
                    }
                }
            }
            if !grew {
                return in_set;
            }
        }
    }

    /// Rotation: move the piece at `occurrence` to the base, by repeatedly
    /// sending the piece's up-set to the end of the word and that portion to
    /// the front, until the word is a pyramid based at that piece.
    fn rotate_to_base(&self, w: &[u8], occurrence: usize) -> Result<Vec<u8>, KromaticError> {
        let mut word = w.to_vec();
        let mut tracked = occurrence;
        for _ in 0..ROTATION_BUDGET {
            if self.source_positions(&word) == [tracked] {
                return Ok(word);
            }
            let up = self.up_set(&word, tracked);
            let mut front: Vec<u8> = Vec::new();
            let mut back: Vec<u8> = Vec::new();
            for (i, &letter) in word.iter().enumerate() {
                if up[i] {
                    front.push(letter);
                } else {
                    back.push(letter);
                }
            }
            front.extend(back);
            word = front;
            tracked = 0;
        }
        Err(KromaticError::RotationBudget)
    }

    /// A pyramid is a Lyndon heap when its standard word is minimal among
    /// the standard words of its rotations, one rotation per piece.
    fn is_lyndon(&self, w: &[u8]) -> Result<bool, KromaticError> {
        let own = self.standard_word(w);
        for occurrence in 0..w.len() {
            let rotated = self.rotate_to_base(w, occurrence)?;
            let rstd = self.standard_word(&rotated);
            if self.word_lt(&rstd, &own) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Enumerates the Lyndon heaps of a given size on the host graph under a
/// vertex order (a permutation of `0..|V|`): the aperiodic pyramids whose
/// standard word is lexicographically minimal among its rotations'.
pub fn lyndon_heaps(
    g: &WeightedGraph,
    order: &[usize],
    size: usize,
) -> Result<Vec<HeapWord>, KromaticError> {
    if size > 8 {
        return Err(KromaticError::Bound {
            op: "lyndon_heaps",
            detail: format!("size {} > 8", size),
        });
    }
    if g.vertex_count() > 10 {
        return Err(KromaticError::Bound {
            op: "lyndon_heaps",
            detail: format!("{} vertices > 10", g.vertex_count()),
        });
    }
    let mut rank = vec![0usize; g.vertex_count()];
    for (pos, &v) in order.iter().enumerate() {
        rank[v] = pos;
    }
    let ctx = HeapContext { g, rank };
    let n = g.vertex_count();
    let mut out = Vec::new();
    if n == 0 || size == 0 {
        return Ok(out);
    }
    let mut word = vec![0u8; size];
    enumerate_words(n as u8, 0, &mut word, &mut |w| -> Result<(), KromaticError> {
        // one representative per class: its own standard word
        if ctx.standard_word(w) != w {
            return Ok(());
        }
        if ctx.source_positions(w).len() != 1 {
            return Ok(());
        }
        if ctx.is_periodic(w) {
            return Ok(());
        }
        if ctx.is_lyndon(w)? {
            let support = w.iter().fold(0 as VertexMask, |acc, &v| acc | (1 << v));
            out.push(HeapWord {
                standard: w.iter().map(|&v| g.id(v as usize).to_string()).collect(),
                support,
                size: w.len(),
            });
        }
        Ok(())
    })?;
    Ok(out)
}

fn enumerate_words<E>(
    alphabet: u8,
    pos: usize,
    word: &mut Vec<u8>,
    f: &mut impl FnMut(&[u8]) -> Result<(), E>,
) -> Result<(), E> {
    if pos == word.len() {
        return f(word);
    }
    for letter in 0..alphabet {
        word[pos] = letter;
        enumerate_words(alphabet, pos + 1, word, f)?;
    }
    Ok(())
}

/// The `ω(p̄′)` expansion of the KSF up to total degree `cap`:
/// `[ω(p̄′_λ)]` counts the sets of *distinct* Lyndon heaps whose sizes are
/// the parts of λ and whose supports jointly cover the vertex set. The
/// vertex order is the host's fixed order.
pub fn ksf_omega_p(g: &WeightedGraph, cap: u32) -> Result<KSeries, KromaticError> {
    if g.vertex_count() > 4 {
        return Err(KromaticError::Bound {
            op: "ksf_omega_p",
            detail: format!("{} vertices > 4", g.vertex_count()),
        });
    }
    if cap > 8 {
        return Err(KromaticError::Bound {
            op: "ksf_omega_p",
            detail: format!("cap {} > 8", cap),
        });
    }
    let order: Vec<usize> = (0..g.vertex_count()).collect();
    let mut by_size: BTreeMap<u32, Vec<VertexMask>> = BTreeMap::new();
    for s in 1..=cap {
        let heaps = lyndon_heaps(g, &order, s as usize)?;
        by_size.insert(s, heaps.into_iter().map(|h| h.support).collect());
    }
    let full = g.full_mask();
    let mut out = KSeries::zero(KBasis::OmegaPBarPrime, Some(cap));
    if g.vertex_count() == 0 {
        out.add_term(Partition::empty(), Rational::one());
        return Ok(out);
    }
    for d in 1..=cap {
        for lambda in Partition::all_of(d) {
            let sizes: Vec<(u32, usize)> = lambda.multiplicities().into_iter().collect();
            let count = count_covering_selections(&sizes, 0, 0, full, &by_size);
            if count > 0 {
                out.add_term(lambda, rat_int(count as i64));
            }
        }
    }
    Ok(out)
}

/// Number of ways to pick, for each `(size, multiplicity)`, that many
/// distinct size-s Lyndon heaps, such that all supports cover `full`.
fn count_covering_selections(
    sizes: &[(u32, usize)],
    idx: usize,
    covered: VertexMask,
    full: VertexMask,
    by_size: &BTreeMap<u32, Vec<VertexMask>>,
) -> u64 {
    if idx == sizes.len() {
        return u64::from(covered == full);
    }
    let (size, k) = sizes[idx];
    let pool = &by_size[&size];
    fn choose(
        pool: &[VertexMask],
        start: usize,
        k: usize,
        covered: VertexMask,
        rest: &dyn Fn(VertexMask) -> u64,
    ) -> u64 {
        if k == 0 {
            return rest(covered);
        }
        let mut total = 0;
        for i in start..pool.len() {
            total += choose(pool, i + 1, k - 1, covered | pool[i], rest);
        }
        total
    }
    let rest = |covered: VertexMask| count_covering_selections(sizes, idx + 1, covered, full, by_size);
    choose(pool, 0, k, covered, &rest)
}

// ----------------------------------------------------------------------
// The K triangle-free complement map
// ----------------------------------------------------------------------

/// Report of [`verify_k_triangle_free`]: equality of the mapped expansion
/// with the complement's KSF, checkable only up to the working cap.
#[derive(Clone, Debug)]
pub struct KTriangleFreeReport {
    pub holds: bool,
    pub up_to: u32,
    pub first_diff: Option<Partition>,
}

/// Maps the `ω(p̄′)` expansion of an unweighted triangle-free graph through
/// `ω(p̄′_n) ↦ m̃-bar_n (n ≤ 2), 0 (n ≥ 3)` extended multiplicatively, routes
/// the image to monomials, and compares with the set-coloring oracle of the
/// complement, up to degree `cap`.
pub fn verify_k_triangle_free(
    g: &WeightedGraph,
    cap: u32,
) -> Result<KTriangleFreeReport, KromaticError> {
    if !g.is_unweighted() {
        return Err(KromaticError::Bound {
            op: "verify_k_triangle_free",
            detail: "graph must be unweighted".into(),
        });
    }
    if g.has_triangle() {
        return Err(KromaticError::NotTriangleFree);
    }
    let omega = ksf_omega_p(g, cap)?;
    let mut image = KSeries::zero(KBasis::MTildeBar, Some(cap));
    for (lambda, coef) in omega.terms() {
        if lambda.parts().iter().all(|&p| p <= 2) {
            image.add_term(lambda.clone(), coef.clone());
        }
    }
    let image_monomial = mbar_to_monomial(&image, cap)?;
    let target = set_coloring_expansion(&g.complement(), cap);
    let cmp = image_monomial.compare(&target);
    Ok(KTriangleFreeReport { holds: cmp.equal, up_to: cap, first_diff: cmp.first_diff })
}
