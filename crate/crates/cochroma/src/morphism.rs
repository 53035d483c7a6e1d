//! Graded algebra maps `Λ → Λ̃` of the form `p_n ↦ aₙ·m̃ₙ` (these are exactly
//! the graded Hopf algebra morphisms between the two structures), the class
//! configurations that generate the useful families of them, characters of
//! `Λ̃`, an exact solver for the coefficients `aₙ` demanded by a single
//! graph, and the family/diagram verifiers.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num::{One, Zero};

use crate::csf::{csf_via_orientations, csf_via_stable_partitions};
use crate::error::{FoundationError, MorphismError};
use crate::graph::WeightedGraph;
use crate::partition::Partition;
use crate::scalar::{factorial_rat, PhaseScalar, Rational};
use crate::series::{Basis, Series};

/// The sequence `n ↦ aₙ` (1 ≤ n ≤ cap) defining the graded algebra map
/// `p_n ↦ aₙ·m̃ₙ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismSpec {
    entries: BTreeMap<u32, PhaseScalar>,
    cap: u32,
    provenance: String,
}

impl MorphismSpec {
    /// Missing entries in `1..=cap` default to zero; entries outside the
    /// range are dropped.
    pub fn new(entries: BTreeMap<u32, PhaseScalar>, cap: u32, provenance: &str) -> MorphismSpec {
        let mut full = entries;
        for n in 1..=cap {
            full.entry(n).or_insert_with(PhaseScalar::zero);
        }
        full.retain(|&n, _| n >= 1 && n <= cap);
        MorphismSpec { entries: full, cap, provenance: provenance.to_string() }
    }

    pub fn coefficient(&self, n: u32) -> Result<&PhaseScalar, MorphismError> {
        self.entries.get(&n).ok_or(MorphismError::PartOutOfRange { part: n, cap: self.cap })
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn entries(&self) -> impl Iterator<Item = (&u32, &PhaseScalar)> {
        self.entries.iter()
    }

    /// The image of a `p`-basis series over Lambda: coefficient of `m̃_λ` is
    /// `[p_λ]f · ∏ᵢ a_{λᵢ}`. No additive collisions occur because distinct
    /// `p_λ` map to distinct `m̃_λ`.
    pub fn apply(&self, f: &Series) -> Result<PhasedSeries, MorphismError> {
        if f.basis() != Basis::P {
            return Err(MorphismError::WrongBasis);
        }
        let mut out = PhasedSeries::new();
        for (lambda, coef) in f.terms() {
            let mut value = PhaseScalar::from_rational(coef);
            for &part in lambda.parts() {
                value = value.mul(self.coefficient(part)?);
            }
            out.set_term(lambda.clone(), value);
        }
        Ok(out)
    }
}

/// A sparse `m̃`-expansion with magnitude/phase coefficients: the codomain of
/// morphism images. No coefficient addition is ever required, since each
/// index is written at most once.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PhasedSeries {
    terms: BTreeMap<Partition, PhaseScalar>,
}

impl PhasedSeries {
    pub fn new() -> PhasedSeries {
        PhasedSeries { terms: BTreeMap::new() }
    }

    pub fn from_series(s: &Series) -> PhasedSeries {
        let mut out = PhasedSeries::new();
        for (l, c) in s.terms() {
            out.set_term(l.clone(), PhaseScalar::from_rational(c));
        }
        out
    }

    pub fn set_term(&mut self, lambda: Partition, value: PhaseScalar) {
        if value.is_zero() {
            self.terms.remove(&lambda);
        } else {
            self.terms.insert(lambda, value);
        }
    }

    pub fn coeff(&self, lambda: &Partition) -> PhaseScalar {
        self.terms.get(lambda).cloned().unwrap_or_else(PhaseScalar::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &PhaseScalar)> {
        self.terms.iter()
    }

    /// First index where the two series differ, in canonical order.
    pub fn first_diff(&self, other: &PhasedSeries) -> Option<Partition> {
        let keys: BTreeSet<&Partition> = self.terms.keys().chain(other.terms.keys()).collect();
        keys.into_iter().find(|l| self.coeff(l) != other.coeff(l)).cloned()
    }
}

// ----------------------------------------------------------------------
// Class-based constructions
// ----------------------------------------------------------------------

/// Non-overlapping weight classes: `aₙ = 0` on `c_star`,
/// `aₙ = (−1)^{k−1}/(k−1)!` on class `k`, `default` elsewhere.
#[derive(Clone, Debug)]
pub struct ClassConfig {
    pub c_star: BTreeSet<u32>,
    pub classes: BTreeMap<u32, BTreeSet<u32>>,
    pub default: PhaseScalar,
}

impl ClassConfig {
    pub fn validate(&self) -> Result<(), MorphismError> {
        let mut seen: BTreeSet<u32> = BTreeSet::new();
        for n in self.c_star.iter().chain(self.classes.values().flatten()) {
            if !seen.insert(*n) {
                return Err(MorphismError::OverlappingClasses(*n));
            }
        }
        Ok(())
    }
}

/// The map defined by a class configuration, up to degree `n`.
pub fn spec_from_classes(cfg: &ClassConfig, n: u32) -> Result<MorphismSpec, MorphismError> {
    cfg.validate()?;
    let mut entries = BTreeMap::new();
    for part in 1..=n {
        let value = if cfg.c_star.contains(&part) {
            PhaseScalar::zero()
        } else if let Some((&k, _)) = cfg.classes.iter().find(|(_, set)| set.contains(&part)) {
            let mut c = Rational::one() / factorial_rat(k as u64 - 1);
            if k % 2 == 0 {
                c = -c;
            }
            PhaseScalar::from_rational(&c)
        } else {
            cfg.default.clone()
        };
        entries.insert(part, value);
    }
    Ok(MorphismSpec::new(entries, n, "class-based"))
}

/// `a₁ = 1, a₂ = −1, aₙ = 0 (n ≥ 3)`: sends the CSF of every unweighted
/// triangle-free graph to the CSF of its complement.
pub fn triangle_free_spec(n: u32) -> MorphismSpec {
    let cfg = ClassConfig {
        c_star: (3..=n).collect(),
        classes: BTreeMap::from([(1, BTreeSet::from([1])), (2, BTreeSet::from([2]))]),
        default: PhaseScalar::zero(),
    };
    let mut spec = spec_from_classes(&cfg, n).expect("disjoint by construction");
    spec.provenance = "triangle-free".into();
    spec
}

/// `aₙ = (−1)^{n−1}/(n−1)!`: the all-cliques map, sending `λ!·e_λ` to the
/// CSF of the complete multipartite graph with parts λ.
pub fn all_cliques_spec(n: u32) -> MorphismSpec {
    let mut spec = from_v_sequence(&(1..=n).collect::<Vec<u32>>(), n).expect("v_n = n valid");
    spec.provenance = "all-cliques".into();
    spec
}

/// `aₙ = 1`: the basis isomorphism `p_λ ↦ m̃_λ`.
pub fn identity_spec(n: u32) -> MorphismSpec {
    let mut spec = from_v_sequence(&vec![1; n as usize], n).expect("v_n = 1 valid");
    spec.provenance = "identity".into();
    spec
}

/// From a vertex-count sequence `v_1, …, v_n` (every weight-n induced
/// subgraph of a family clique has `v_n` vertices): `aₙ = (−1)^{v_n−1}/(v_n−1)!`.
pub fn from_v_sequence(v: &[u32], n: u32) -> Result<MorphismSpec, MorphismError> {
    let mut entries = BTreeMap::new();
    for part in 1..=n {
        let vn = *v.get(part as usize - 1).ok_or(MorphismError::PartOutOfRange { part, cap: n })?;
        let mut c = Rational::one() / factorial_rat(vn as u64 - 1);
        if vn % 2 == 0 {
            c = -c;
        }
        entries.insert(part, PhaseScalar::from_rational(&c));
    }
    Ok(MorphismSpec::new(entries, n, "clique-family"))
}

/// The class configuration of the binary-expansion clique-path family:
/// class 1 is the powers of two, class 2 the sums of two distinct powers,
/// class k ≥ 3 the sums of k-element subsets of a single block of `b`, and
/// everything else lands in the zero class.
pub fn binary_clique_classes(b: &[BTreeSet<u64>], n_max: u32) -> ClassConfig {
    let mut classes: BTreeMap<u32, BTreeSet<u32>> = BTreeMap::new();
    let powers: Vec<u64> = (0..32).map(|i| 1u64 << i).filter(|&x| x <= n_max as u64).collect();
    classes.insert(1, powers.iter().map(|&x| x as u32).collect());
    let mut c2 = BTreeSet::new();
    for (i, &x) in powers.iter().enumerate() {
        for &y in &powers[i + 1..] {
            if x + y <= n_max as u64 {
                c2.insert((x + y) as u32);
            }
        }
    }
    classes.insert(2, c2);
    for block in b {
        let elems: Vec<u64> = block.iter().copied().collect();
        for size in 3..=elems.len() {
            for subset in subsets(&elems, size) {
                let sum: u64 = subset.iter().sum();
                if sum <= n_max as u64 {
                    classes.entry(size as u32).or_default().insert(sum as u32);
                }
            }
        }
    }
    let covered: BTreeSet<u32> = classes.values().flatten().copied().collect();
    let c_star: BTreeSet<u32> = (1..=n_max).filter(|n| !covered.contains(n)).collect();
    ClassConfig { c_star, classes, default: PhaseScalar::zero() }
}

fn subsets(elems: &[u64], size: usize) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(elems: &[u64], start: usize, size: usize, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..elems.len() {
            cur.push(elems[i]);
            rec(elems, i + 1, size, cur, out);
            cur.pop();
        }
    }
    rec(elems, 0, size, &mut cur, &mut out);
    out
}

// ----------------------------------------------------------------------
// Verification
// ----------------------------------------------------------------------

/// Result of checking `φ(X_G) = X_{complement(G)}` for a single graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplementMapReport {
    pub holds: bool,
    /// On failure, the first differing index with (image, target) values.
    pub first_diff: Option<(Partition, PhaseScalar, PhaseScalar)>,
}

/// Computes `apply(spec, X_G in p)` and the m̃-expansion of the complement's
/// CSF, and compares them exactly.
pub fn verify_complement_map(
    spec: &MorphismSpec,
    g: &WeightedGraph,
) -> Result<ComplementMapReport, MorphismError> {
    if g.total_weight() > spec.cap() {
        return Err(MorphismError::PartOutOfRange { part: g.total_weight(), cap: spec.cap() });
    }
    let order: Vec<usize> = (0..g.vertex_count()).collect();
    let x_g = csf_via_orientations(g, &order).map_err(MorphismError::Graph)?;
    let image = spec.apply(&x_g)?;
    let target = PhasedSeries::from_series(&csf_via_stable_partitions(&g.complement()));
    match image.first_diff(&target) {
        None => Ok(ComplementMapReport { holds: true, first_diff: None }),
        Some(l) => {
            let a = image.coeff(&l);
            let b = target.coeff(&l);
            Ok(ComplementMapReport { holds: false, first_diff: Some((l, a, b)) })
        }
    }
}

/// Result of the two-sided restriction check `φ(X_G) = θ(X_{complement(G)})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramReport {
    pub holds: bool,
    pub first_diff: Option<(Partition, PhaseScalar, PhaseScalar)>,
}

/// φ sends `p_n ↦ m̃_n` for n in `v_set`, `−m̃_n` for n in `e_set`, 0 on the
/// rest; θ fixes `m̃_n` for n in `v_set ∪ e_set` and kills the rest.
/// `c_set = None` means "every weight outside V ∪ E"; an explicit `c_set`
/// must cover all other weights that occur, or the check errors out.
/// Verifies `φ(X_G) = θ(X_Ḡ)` exactly.
pub fn verify_commuting_diagram(
    v_set: &BTreeSet<u32>,
    e_set: &BTreeSet<u32>,
    c_set: Option<&BTreeSet<u32>>,
    g: &WeightedGraph,
) -> Result<DiagramReport, MorphismError> {
    if let Some(n) = v_set.intersection(e_set).next() {
        return Err(MorphismError::OverlappingClasses(*n));
    }
    if let Some(c) = c_set {
        if let Some(x) = c.intersection(v_set).chain(c.intersection(e_set)).next() {
            return Err(MorphismError::OverlappingClasses(*x));
        }
    }
    let n = g.total_weight();
    let killed = |part: u32| -> Result<bool, MorphismError> {
        if v_set.contains(&part) || e_set.contains(&part) {
            return Ok(false);
        }
        match c_set {
            None => Ok(true),
            Some(c) if c.contains(&part) => Ok(true),
            Some(_) => Err(MorphismError::PartOutOfRange { part, cap: n }),
        }
    };

    // φ(X_G)
    let mut entries = BTreeMap::new();
    for part in 1..=n {
        let value = if v_set.contains(&part) {
            PhaseScalar::one()
        } else if e_set.contains(&part) {
            PhaseScalar::from_rational(&-Rational::one())
        } else {
            killed(part)?;
            PhaseScalar::zero()
        };
        entries.insert(part, value);
    }
    let phi = MorphismSpec::new(entries, n, "diagram-phi");
    let order: Vec<usize> = (0..g.vertex_count()).collect();
    let x_g = csf_via_orientations(g, &order).map_err(MorphismError::Graph)?;
    let lhs = phi.apply(&x_g)?;

    // θ(X_Ḡ): drop m̃_λ terms containing a killed part, keep the others.
    let xc = csf_via_stable_partitions(&g.complement());
    let mut rhs = PhasedSeries::new();
    for (lambda, coef) in xc.terms() {
        let mut keep = true;
        for &part in lambda.parts() {
            if killed(part)? {
                keep = false;
            }
        }
        if keep {
            rhs.set_term(lambda.clone(), PhaseScalar::from_rational(coef));
        }
    }

    match lhs.first_diff(&rhs) {
        None => Ok(DiagramReport { holds: true, first_diff: None }),
        Some(l) => {
            let a = lhs.coeff(&l);
            let b = rhs.coeff(&l);
            Ok(DiagramReport { holds: false, first_diff: Some((l, a, b)) })
        }
    }
}

/// Violation found by [`family_closure_check`].
#[derive(Clone, Debug)]
pub struct ClosureViolation {
    pub host_weight: u32,
    pub subgraph: WeightedGraph,
}

#[derive(Clone, Debug, Default)]
pub struct FamilyReport {
    pub violations: Vec<ClosureViolation>,
}

impl FamilyReport {
    pub fn closed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Given one graph per total weight `1..=N` (in order), checks that every
/// connected induced subgraph of every member is isomorphic to the member of
/// matching weight.
pub fn family_closure_check(graphs: &[WeightedGraph]) -> Result<FamilyReport, MorphismError> {
    for (i, g) in graphs.iter().enumerate() {
        if g.total_weight() != i as u32 + 1 {
            return Err(MorphismError::BadFamilyIndex(g.total_weight()));
        }
    }
    let keys: Vec<_> = graphs
        .iter()
        .map(|g| g.canonical_key())
        .collect::<Result<Vec<_>, _>>()
        .map_err(MorphismError::Graph)?;
    let mut report = FamilyReport::default();
    for g in graphs {
        for mask in 1..=g.full_mask() {
            if !g.mask_is_connected(mask) {
                continue;
            }
            let sub = g.induced(mask);
            let w = sub.total_weight() as usize;
            let matches = w >= 1
                && w <= graphs.len()
                && sub.canonical_key().map_err(MorphismError::Graph)? == keys[w - 1];
            if !matches {
                report
                    .violations
                    .push(ClosureViolation { host_weight: g.total_weight(), subgraph: sub });
            }
        }
    }
    Ok(report)
}

// ----------------------------------------------------------------------
// Characters
// ----------------------------------------------------------------------

/// `ζ_a(X_G) = Σ_λ |St_λ(G)| a_{λ₁}⋯a_{λ_ℓ}` for a rational-valued sequence
/// `a` defined on all part values up to `weight(G)`.
pub fn character_eval(
    a: &BTreeMap<u32, Rational>,
    g: &WeightedGraph,
) -> Result<Rational, MorphismError> {
    let mut total = Rational::zero();
    for (lambda, count) in g.stable_partition_profile() {
        let mut term = Rational::from_integer(count.into());
        for &part in lambda.parts() {
            let an = a
                .get(&part)
                .ok_or(MorphismError::PartOutOfRange { part, cap: g.total_weight() })?;
            term *= an;
        }
        total += term;
    }
    Ok(total)
}

/// Convolution of characters: the n-th term of `ζ_a * ζ_b` is `aₙ + bₙ`.
pub fn character_convolve(
    a: &BTreeMap<u32, Rational>,
    b: &BTreeMap<u32, Rational>,
) -> BTreeMap<u32, Rational> {
    let mut out = a.clone();
    for (n, bn) in b {
        let entry = out.entry(*n).or_insert_with(Rational::zero);
        *entry += bn;
    }
    out
}

// ----------------------------------------------------------------------
// The single-graph coefficient solver
// ----------------------------------------------------------------------

/// One coefficient equation `∏ᵢ a_{λᵢ} = rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equation {
    pub lambda: Partition,
    pub rhs: PhaseScalar,
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (value, mult) in self.lambda.multiplicities() {
            if !first {
                write!(f, "·")?;
            }
            first = false;
            if mult == 1 {
                write!(f, "a{}", value)?;
            } else {
                write!(f, "a{}^{}", value, mult)?;
            }
        }
        write!(f, " = {}", self.rhs)
    }
}

/// A solved coefficient assignment: pinned entries, plus the unknowns no
/// equation ever constrained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolvedMap {
    pub entries: BTreeMap<u32, PhaseScalar>,
    pub free: BTreeSet<u32>,
}

impl SolvedMap {
    /// Materializes a full morphism spec, filling free entries with `fill`
    /// (any value satisfies the system).
    pub fn to_spec(&self, cap: u32, fill: &PhaseScalar) -> MorphismSpec {
        let mut entries = self.entries.clone();
        for n in &self.free {
            entries.insert(*n, fill.clone());
        }
        MorphismSpec::new(entries, cap, "solved")
    }
}

/// Outcome of [`solve_for_graph`].
#[derive(Clone, Debug)]
pub enum SolveOutcome {
    /// Every solution found by exhaustive root branching, deduplicated and
    /// sorted deterministically.
    Solutions(Vec<SolvedMap>),
    /// No solution; `witness` is a concretely violated equation.
    Infeasible { witness: Equation },
    /// A required k-th root of a rational magnitude does not exist over ℚ.
    NoExactRoot { witness: Equation },
    /// Triangular elimination stalled with ≥ 2 unknowns in every remaining
    /// equation; the residual system is reported rather than guessed at.
    Undetermined { residual: Vec<Equation> },
}

/// Builds the system `∏ a_{λᵢ} = [m̃_λ]X_Ḡ / [p_λ]X_G` over every λ in either
/// support and solves it: repeatedly pin single-unknown equations (branching
/// over all exact k-th roots), branch zero right-hand sides over which factor
/// vanishes, and finally re-verify every solution against the full system.
pub fn solve_for_graph(g: &WeightedGraph, budget: u64) -> Result<SolveOutcome, MorphismError> {
    let order: Vec<usize> = (0..g.vertex_count()).collect();
    let x_g = csf_via_orientations(g, &order).map_err(MorphismError::Graph)?;
    let x_comp = csf_via_stable_partitions(&g.complement());
    let n = g.total_weight();

    let mut equations: Vec<Equation> = Vec::new();
    let mut lambdas: BTreeSet<Partition> = BTreeSet::new();
    lambdas.extend(x_g.terms().map(|(l, _)| l.clone()));
    lambdas.extend(x_comp.terms().map(|(l, _)| l.clone()));
    for lambda in lambdas {
        let p_coef = x_g.coeff(&lambda);
        let m_coef = x_comp.coeff(&lambda);
        if p_coef.is_zero() {
            if !m_coef.is_zero() {
                // 0 = nonzero: no map of this shape can work.
                return Ok(SolveOutcome::Infeasible {
                    witness: Equation { lambda, rhs: PhaseScalar::from_rational(&m_coef) },
                });
            }
            continue;
        }
        let rhs = PhaseScalar::from_rational(&(m_coef / p_coef));
        equations.push(Equation { lambda, rhs });
    }

    let mut solver = Solver {
        n,
        budget,
        used: 0,
        solutions: Vec::new(),
        violations: Vec::new(),
        no_roots: Vec::new(),
        stalls: Vec::new(),
    };
    solver.run(&BTreeMap::new(), &equations)?;

    if !solver.solutions.is_empty() {
        let mut verified: Vec<SolvedMap> = Vec::new();
        for sol in &solver.solutions {
            let full = sol.to_spec(n, &PhaseScalar::one());
            let ok = equations.iter().all(|eq| {
                let mut prod = PhaseScalar::one();
                for &part in eq.lambda.parts() {
                    prod = prod.mul(full.coefficient(part).expect("entry within cap"));
                }
                prod == eq.rhs
            });
            assert!(ok, "solver produced an unverified assignment");
            if !verified.contains(sol) {
                verified.push(sol.clone());
            }
        }
        verified.sort_by(|a, b| {
            let ka: Vec<_> = a.entries.iter().collect();
            let kb: Vec<_> = b.entries.iter().collect();
            ka.cmp(&kb)
        });
        return Ok(SolveOutcome::Solutions(verified));
    }
    if !solver.stalls.is_empty() {
        return Ok(SolveOutcome::Undetermined { residual: solver.stalls.remove(0) });
    }
    if !solver.violations.is_empty() {
        solver.violations.sort_by(|a, b| a.lambda.cmp(&b.lambda));
        return Ok(SolveOutcome::Infeasible { witness: solver.violations.remove(0) });
    }
    if !solver.no_roots.is_empty() {
        solver.no_roots.sort_by(|a, b| a.lambda.cmp(&b.lambda));
        return Ok(SolveOutcome::NoExactRoot { witness: solver.no_roots.remove(0) });
    }
    // No equations at all: everything is free.
    Ok(SolveOutcome::Solutions(vec![SolvedMap {
        entries: BTreeMap::new(),
        free: (1..=n).collect(),
    }]))
}

struct Solver {
    n: u32,
    budget: u64,
    used: u64,
    solutions: Vec<SolvedMap>,
    violations: Vec<Equation>,
    no_roots: Vec<Equation>,
    stalls: Vec<Vec<Equation>>,
}

/// An equation after substituting the assigned values.
struct Reduced {
    original: Equation,
    /// Product of the assigned factors.
    assigned: PhaseScalar,
    /// Undetermined part value → exponent.
    unknowns: BTreeMap<u32, u32>,
}

impl Solver {
    fn run(
        &mut self,
        assigned: &BTreeMap<u32, PhaseScalar>,
        pending: &[Equation],
    ) -> Result<(), MorphismError> {
        self.used += 1;
        if self.used > self.budget {
            return Err(MorphismError::BranchBudget(self.budget));
        }

        let mut state = assigned.clone();
        let mut eqs: Vec<Equation> = pending.to_vec();

        loop {
            // Substitute current assignments.
            let mut remaining: Vec<Reduced> = Vec::new();
            for eq in &eqs {
                let mut assigned_prod = PhaseScalar::one();
                let mut unknowns: BTreeMap<u32, u32> = BTreeMap::new();
                for (value, mult) in eq.lambda.multiplicities() {
                    match state.get(&value) {
                        Some(a) => assigned_prod = assigned_prod.mul(&a.pow(mult as u32)),
                        None => {
                            unknowns.insert(value, mult as u32);
                        }
                    }
                }
                if eq.rhs.is_zero() {
                    if assigned_prod.is_zero() {
                        continue; // satisfied
                    }
                    if unknowns.is_empty() {
                        self.violations.push(eq.clone());
                        return Ok(()); // branch dead
                    }
                    remaining.push(Reduced {
                        original: eq.clone(),
                        assigned: assigned_prod,
                        unknowns,
                    });
                } else {
                    if assigned_prod.is_zero() {
                        self.violations.push(eq.clone());
                        return Ok(());
                    }
                    if unknowns.is_empty() {
                        if assigned_prod != eq.rhs {
                            self.violations.push(eq.clone());
                            return Ok(());
                        }
                        continue; // satisfied
                    }
                    remaining.push(Reduced {
                        original: eq.clone(),
                        assigned: assigned_prod,
                        unknowns,
                    });
                }
            }

            // Single-unknown equation with nonzero rhs: branch over exact
            // roots. These run before the zero-forcing rule so that unknowns
            // pinned nonzero by the system surface contradictions at the
            // zero-rhs equation itself.
            if let Some(r) =
                remaining.iter().find(|r| !r.original.rhs.is_zero() && r.unknowns.len() == 1)
            {
                let (&value, &exponent) = r.unknowns.iter().next().expect("one unknown");
                let target =
                    r.original.rhs.mul(&r.assigned.inverse().expect("nonzero assigned product"));
                let eq_src = r.original.clone();
                let eqs_next: Vec<Equation> =
                    remaining.iter().map(|r| r.original.clone()).collect();
                match target.kth_roots(exponent) {
                    Err(FoundationError::NoExactRoot { .. }) => {
                        self.no_roots.push(eq_src);
                        return Ok(());
                    }
                    Err(_) => unreachable!("kth_roots only fails with NoExactRoot"),
                    Ok(roots) => {
                        for root in roots {
                            let mut next = state.clone();
                            next.insert(value, root);
                            self.run(&next, &eqs_next)?;
                        }
                        return Ok(());
                    }
                }
            }

            // Forced zero: zero rhs, a single unknown, nonzero assigned part.
            if let Some(r) =
                remaining.iter().find(|r| r.original.rhs.is_zero() && r.unknowns.len() == 1)
            {
                let (&value, _) = r.unknowns.iter().next().expect("one unknown");
                state.insert(value, PhaseScalar::zero());
                eqs = remaining.into_iter().map(|r| r.original).collect();
                continue;
            }

            // Zero-rhs equation with several unknowns: branch on which vanishes.
            if let Some(r) = remaining.iter().find(|r| r.original.rhs.is_zero()) {
                let values: Vec<u32> = r.unknowns.keys().copied().collect();
                let eqs_next: Vec<Equation> =
                    remaining.iter().map(|r| r.original.clone()).collect();
                for value in values {
                    let mut next = state.clone();
                    next.insert(value, PhaseScalar::zero());
                    self.run(&next, &eqs_next)?;
                }
                return Ok(());
            }

            if remaining.is_empty() {
                let free: BTreeSet<u32> = (1..=self.n).filter(|v| !state.contains_key(v)).collect();
                self.solutions.push(SolvedMap { entries: state, free });
                return Ok(());
            }

            // Every remaining equation has ≥ 2 unknowns and a nonzero rhs.
            self.stalls.push(remaining.into_iter().map(|r| r.original).collect());
            return Ok(());
        }
    }
}
