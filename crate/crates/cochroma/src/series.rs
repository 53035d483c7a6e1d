//! Graded sparse symmetric-function series over ℚ in the power-sum (`p`),
//! monomial (`m`), augmented-monomial (`m̃`), and elementary (`e`) bases,
//! with both ring structures on the underlying space:
//!
//! * `Lambda` — the usual product, under which `p` and `e` are multiplicative;
//! * `LambdaTilde` — the product `m̃_λ ⊙ m̃_μ = m̃_{λ⊔μ}` that makes the
//!   augmented monomials multiplicative.
//!
//! Both carry the same coproduct (the generators `p_n` resp. `m̃_n` are
//! primitive) and hence the same graded Hopf structure.
//!
//! Basis conversion is assembled per degree: each basis element of degree `n`
//! is expanded as a polynomial in `n` variables (enough, since partitions of
//! `n` have at most `n` parts), the monomial-basis coefficients are read off
//! the weakly decreasing exponent vectors, and the resulting matrices are
//! inverted exactly over ℚ. Matrices are cached behind a mutex.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Mutex;

use num::{One, Signed, Zero};

use crate::error::SymfuncError;
use crate::partition::Partition;
use crate::scalar::Rational;

/// Degree ceiling for basis conversion; the per-degree expansion in `n`
/// variables grows too fast beyond this.
pub const CONVERSION_DEGREE_BOUND: u32 = 10;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Basis {
    P,
    M,
    MTilde,
    E,
}

impl Basis {
    pub fn name(self) -> &'static str {
        match self {
            Basis::P => "p",
            Basis::M => "m",
            Basis::MTilde => "mtilde",
            Basis::E => "e",
        }
    }

    pub fn parse(s: &str) -> Option<Basis> {
        match s {
            "p" => Some(Basis::P),
            "m" => Some(Basis::M),
            "mtilde" | "m~" | "mt" => Some(Basis::MTilde),
            "e" => Some(Basis::E),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Algebra {
    Lambda,
    LambdaTilde,
}

impl Algebra {
    pub fn name(self) -> &'static str {
        match self {
            Algebra::Lambda => "Lambda",
            Algebra::LambdaTilde => "LambdaTilde",
        }
    }

    /// The multiplicative basis with primitive generators for this algebra.
    pub fn primitive_basis(self) -> Basis {
        match self {
            Algebra::Lambda => Basis::P,
            Algebra::LambdaTilde => Basis::MTilde,
        }
    }

    pub fn admits(self, basis: Basis) -> bool {
        match self {
            Algebra::Lambda => true,
            Algebra::LambdaTilde => basis == Basis::MTilde,
        }
    }
}

fn check_compat(basis: Basis, algebra: Algebra) -> Result<(), SymfuncError> {
    if algebra.admits(basis) {
        Ok(())
    } else {
        Err(SymfuncError::BasisAlgebraMismatch { basis: basis.name(), algebra: algebra.name() })
    }
}

/// A graded sparse series: a map from partitions to rational coefficients,
/// tagged with a basis and an ambient algebra. `cap = Some(d)` marks a
/// truncation: coefficients in degrees above `d` are unknown, not zero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Series {
    basis: Basis,
    algebra: Algebra,
    cap: Option<u32>,
    terms: BTreeMap<Partition, Rational>,
}

impl Series {
    pub fn zero(basis: Basis, algebra: Algebra) -> Series {
        check_compat(basis, algebra).expect("zero(): incompatible basis/algebra");
        Series { basis, algebra, cap: None, terms: BTreeMap::new() }
    }

    pub fn one(basis: Basis, algebra: Algebra) -> Series {
        Series::basis_element_in(basis, Partition::empty(), algebra)
    }

    /// Unit-coefficient basis element over `Lambda`.
    pub fn basis_element(basis: Basis, lambda: Partition) -> Series {
        Series::basis_element_in(basis, lambda, Algebra::Lambda)
    }

    pub fn basis_element_in(basis: Basis, lambda: Partition, algebra: Algebra) -> Series {
        let mut s = Series::zero(basis, algebra);
        s.add_term(lambda, Rational::one());
        s
    }

    pub fn from_terms(
        basis: Basis,
        algebra: Algebra,
        terms: impl IntoIterator<Item = (Partition, Rational)>,
    ) -> Series {
        let mut s = Series::zero(basis, algebra);
        for (l, c) in terms {
            s.add_term(l, c);
        }
        s
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn algebra(&self) -> Algebra {
        self.algebra
    }

    pub fn cap(&self) -> Option<u32> {
        self.cap
    }

    /// Marks the series as truncated at `d`, discarding higher terms.
    pub fn with_cap(mut self, d: u32) -> Series {
        self.terms.retain(|l, _| l.size() <= d);
        self.cap = Some(self.cap.map_or(d, |c| c.min(d)));
        self
    }

    /// Retags the algebra. Only valid when the basis exists in the target
    /// algebra (i.e. anything → Lambda, or an m̃-series → LambdaTilde).
    pub fn into_algebra(mut self, algebra: Algebra) -> Result<Series, SymfuncError> {
        check_compat(self.basis, algebra)?;
        self.algebra = algebra;
        Ok(self)
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

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Degree of a homogeneous series; `None` if mixed or zero.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut deg = None;
        for l in self.terms.keys() {
            match deg {
                None => deg = Some(l.size()),
                Some(d) if d != l.size() => return None,
                _ => {}
            }
        }
        deg
    }

    pub fn max_degree(&self) -> u32 {
        self.terms.keys().map(|l| l.size()).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Rational) -> Series {
        if c.is_zero() {
            let mut z = Series::zero(self.basis, self.algebra);
            z.cap = self.cap;
            return z;
        }
        Series {
            basis: self.basis,
            algebra: self.algebra,
            cap: self.cap,
            terms: self.terms.iter().map(|(l, v)| (l.clone(), v * c)).collect(),
        }
    }

    pub fn add(&self, other: &Series) -> Result<Series, SymfuncError> {
        if self.basis != other.basis || self.algebra != other.algebra {
            return Err(SymfuncError::AlgebraMismatch);
        }
        let cap = min_cap(self.cap, other.cap);
        let mut out = Series { basis: self.basis, algebra: self.algebra, cap, terms: BTreeMap::new() };
        for (l, c) in self.terms.iter().chain(other.terms.iter()) {
            out.add_term(l.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Series) -> Result<Series, SymfuncError> {
        self.add(&other.scale(&-Rational::one()))
    }

    /// Product in the ambient algebra: index-union convolution in the
    /// multiplicative basis (`p` for Lambda, `m̃` for LambdaTilde), converted
    /// back to this series' basis.
    pub fn multiply(&self, other: &Series) -> Result<Series, SymfuncError> {
        if self.algebra != other.algebra {
            return Err(SymfuncError::AlgebraMismatch);
        }
        let prim = self.algebra.primitive_basis();
        let a = self.convert(prim)?;
        let b = other.convert(prim)?;
        let cap = min_cap(self.cap, other.cap);
        let mut out = Series { basis: prim, algebra: self.algebra, cap, terms: BTreeMap::new() };
        for (l, cl) in a.terms.iter() {
            for (m, cm) in b.terms.iter() {
                let u = l.union(m);
                if cap.map_or(true, |c| u.size() <= c) {
                    out.add_term(u, cl * cm);
                }
            }
        }
        out.convert(self.basis)
    }

    /// Exact change of basis, degree by degree. In `LambdaTilde` only the
    /// m̃ basis exists, so any other target errors out.
    pub fn convert(&self, target: Basis) -> Result<Series, SymfuncError> {
        check_compat(target, self.algebra)?;
        if target == self.basis {
            return Ok(self.clone());
        }
        let mut out =
            Series { basis: target, algebra: self.algebra, cap: self.cap, terms: BTreeMap::new() };
        // group by degree
        let mut by_degree: BTreeMap<u32, Vec<(Partition, Rational)>> = BTreeMap::new();
        for (l, c) in &self.terms {
            by_degree.entry(l.size()).or_default().push((l.clone(), c.clone()));
        }
        for (d, terms) in by_degree {
            if d == 0 {
                for (l, c) in terms {
                    out.add_term(l, c);
                }
                continue;
            }
            if d > CONVERSION_DEGREE_BOUND {
                return Err(SymfuncError::CapViolation);
            }
            let parts_index = degree_index(d);
            let mut vec = vec![Rational::zero(); parts_index.len()];
            for (l, c) in terms {
                vec[parts_index[&l]] = c;
            }
            let in_m = apply_matrix(&to_m_matrix(self.basis, d), &vec);
            let out_vec = apply_matrix(&from_m_matrix(target, d), &in_m);
            for (l, idx) in parts_index.iter() {
                if !out_vec[*idx].is_zero() {
                    out.add_term(l.clone(), out_vec[*idx].clone());
                }
            }
        }
        Ok(out)
    }

    /// The degree-0 coefficient.
    pub fn counit(&self) -> Rational {
        self.coeff(&Partition::empty())
    }

    /// Algebra endomorphism negating each primitive generator:
    /// `b_λ ↦ (−1)^{ℓ(λ)} b_λ` in the multiplicative basis.
    pub fn antipode(&self) -> Result<Series, SymfuncError> {
        let prim = self.algebra.primitive_basis();
        let p = self.convert(prim)?;
        let mut out = Series { basis: prim, algebra: self.algebra, cap: self.cap, terms: BTreeMap::new() };
        for (l, c) in p.terms.iter() {
            let sign = if l.len() % 2 == 0 { c.clone() } else { -c.clone() };
            out.add_term(l.clone(), sign);
        }
        out.convert(self.basis)
    }

    /// Coproduct, extended multiplicatively from the primitive generators:
    /// `Δ b_λ = Σ over splits of the parts (repeated parts distinguishable)`.
    pub fn coproduct(&self) -> Result<TensorSeries, SymfuncError> {
        let prim = self.algebra.primitive_basis();
        let p = self.convert(prim)?;
        let mut out = TensorSeries::zero(prim, self.algebra);
        for (l, c) in p.terms.iter() {
            for (mu, nu, count) in split_partition(l) {
                out.add_term(mu, nu, c * Rational::from_integer(count.into()));
            }
        }
        Ok(out)
    }

    /// The polynomial image of the series in `n_vars` variables, as a map
    /// from weakly decreasing exponent vectors (zeros trimmed) to
    /// coefficients. This is a faithful comparator between series whose
    /// monomial supports use at most `n_vars` parts: restriction to `n_vars`
    /// variables is injective on the span of `m_μ` with `ℓ(μ) ≤ n_vars`.
    pub fn monomial_image(&self, n_vars: usize) -> BTreeMap<Partition, Rational> {
        let mut out: BTreeMap<Partition, Rational> = BTreeMap::new();
        for (l, c) in &self.terms {
            for (mu, k) in restricted_monomials(self.basis, l, n_vars) {
                let entry = out.entry(mu).or_insert_with(Rational::zero);
                *entry += c * k;
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// Termwise comparison up to the common cap. Exact equality when both
    /// series are exact-finite.
    pub fn compare(&self, other: &Series) -> SeriesComparison {
        let cap = min_cap(self.cap, other.cap);
        let within = |l: &Partition| cap.map_or(true, |c| l.size() <= c);
        for (l, c) in &self.terms {
            if within(l) && other.coeff(l) != *c {
                return SeriesComparison { equal: false, up_to: cap, first_diff: Some(l.clone()) };
            }
        }
        for (l, c) in &other.terms {
            if within(l) && self.coeff(l) != *c {
                return SeriesComparison { equal: false, up_to: cap, first_diff: Some(l.clone()) };
            }
        }
        SeriesComparison { equal: true, up_to: cap, first_diff: None }
    }
}

/// Outcome of [`Series::compare`]: `up_to = None` means the comparison was
/// exact; `Some(d)` means equality was only checkable through degree `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesComparison {
    pub equal: bool,
    pub up_to: Option<u32>,
    pub first_diff: Option<Partition>,
}

fn min_cap(a: Option<u32>, b: Option<u32>) -> Option<u32> {
    match (a, b) {
        (None, x) => x,
        (x, None) => x,
        (Some(x), Some(y)) => Some(x.min(y)),
    }
}

/// All ways to split the parts of λ into an ordered pair of sub-partitions,
/// counting repeated parts as distinguishable: `(μ, ν, multiplicity)` with
/// multiplicity `∏ C(r_i(λ), r_i(μ))`.
pub fn split_partition(lambda: &Partition) -> Vec<(Partition, Partition, u64)> {
    let mult = lambda.multiplicities();
    let values: Vec<(u32, usize)> = mult.into_iter().collect();
    let mut out = Vec::new();
    let mut left: Vec<u32> = Vec::new();
    fn rec(
        values: &[(u32, usize)],
        k: usize,
        left: &mut Vec<u32>,
        count: u64,
        out: &mut Vec<(Partition, Partition, u64)>,
        lambda: &Partition,
    ) {
        if k == values.len() {
            let mu = Partition::from_parts(left.iter().copied()).expect("parts positive");
            let mut rest: Vec<u32> = lambda.parts().to_vec();
            for v in left.iter() {
                let pos = rest.iter().position(|x| x == v).expect("sub-multiset");
                rest.remove(pos);
            }
            let nu = Partition::from_parts(rest).expect("parts positive");
            out.push((mu, nu, count));
            return;
        }
        let (value, r) = values[k];
        for take in 0..=r {
            let c = binomial(r as u64, take as u64);
            let before = left.len();
            for _ in 0..take {
                left.push(value);
            }
            rec(values, k + 1, left, count * c, out, lambda);
            left.truncate(before);
        }
    }
    rec(&values, 0, &mut left, 1, &mut out, lambda);
    out
}

pub(crate) fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut num = 1u64;
    let mut den = 1u64;
    for i in 0..k {
        num *= n - i;
        den *= i + 1;
    }
    num / den
}

// ----------------------------------------------------------------------
// Conversion matrices
// ----------------------------------------------------------------------

type Matrix = Vec<Vec<Rational>>;

static TO_M_CACHE: Mutex<Option<HashMap<(Basis, u32), Matrix>>> = Mutex::new(None);
static FROM_M_CACHE: Mutex<Option<HashMap<(Basis, u32), Matrix>>> = Mutex::new(None);

fn degree_index(d: u32) -> BTreeMap<Partition, usize> {
    Partition::all_of(d).into_iter().enumerate().map(|(i, l)| (l, i)).collect()
}

/// Column λ holds the m-expansion of the λ basis element.
fn to_m_matrix(basis: Basis, d: u32) -> Matrix {
    {
        let guard = TO_M_CACHE.lock().unwrap();
        if let Some(map) = guard.as_ref() {
            if let Some(m) = map.get(&(basis, d)) {
                return m.clone();
            }
        }
    }
    let mat = build_to_m(basis, d);
    let mut guard = TO_M_CACHE.lock().unwrap();
    guard.get_or_insert_with(HashMap::new).insert((basis, d), mat.clone());
    mat
}

fn from_m_matrix(basis: Basis, d: u32) -> Matrix {
    {
        let guard = FROM_M_CACHE.lock().unwrap();
        if let Some(map) = guard.as_ref() {
            if let Some(m) = map.get(&(basis, d)) {
                return m.clone();
            }
        }
    }
    let mat = invert_matrix(&to_m_matrix(basis, d));
    let mut guard = FROM_M_CACHE.lock().unwrap();
    guard.get_or_insert_with(HashMap::new).insert((basis, d), mat.clone());
    mat
}

fn build_to_m(basis: Basis, d: u32) -> Matrix {
    let partitions = Partition::all_of(d);
    let k = partitions.len();
    let mut mat = vec![vec![Rational::zero(); k]; k];
    match basis {
        Basis::M => {
            for (i, row) in mat.iter_mut().enumerate() {
                row[i] = Rational::one();
            }
        }
        Basis::MTilde => {
            // m̃_λ = (∏ r_i(λ)!) · m_λ
            for (i, l) in partitions.iter().enumerate() {
                mat[i][i] = l.aut_factor();
            }
        }
        Basis::P | Basis::E => {
            let n = d as usize;
            for (col, l) in partitions.iter().enumerate() {
                let poly = expand_in_vars(basis, l, n);
                for (row, mu) in partitions.iter().enumerate() {
                    let mut key = mu.parts().to_vec();
                    key.resize(n, 0);
                    if let Some(c) = poly.get(&key) {
                        mat[row][col] = c.clone();
                    }
                }
            }
        }
    }
    mat
}

/// Expands `p_λ` or `e_λ` as a polynomial in `n` variables; keys are
/// exponent vectors of length `n`.
fn expand_in_vars(basis: Basis, lambda: &Partition, n: usize) -> HashMap<Vec<u32>, Rational> {
    let mut poly: HashMap<Vec<u32>, Rational> = HashMap::new();
    poly.insert(vec![0; n], Rational::one());
    for &part in lambda.parts() {
        let factor: Vec<Vec<u32>> = match basis {
            Basis::P => (0..n)
                .map(|j| {
                    let mut e = vec![0; n];
                    e[j] = part;
                    e
                })
                .collect(),
            Basis::E => subsets_of_size(n, part as usize)
                .into_iter()
                .map(|s| {
                    let mut e = vec![0; n];
                    for j in s {
                        e[j] = 1;
                    }
                    e
                })
                .collect(),
            _ => unreachable!("only p and e expand"),
        };
        let mut next: HashMap<Vec<u32>, Rational> = HashMap::new();
        for (e, c) in &poly {
            for f in &factor {
                let sum: Vec<u32> = e.iter().zip(f).map(|(a, b)| a + b).collect();
                *next.entry(sum).or_insert_with(Rational::zero) += c;
            }
        }
        poly = next;
    }
    poly
}

static RESTRICTED_CACHE: Mutex<
    Option<HashMap<(Basis, Partition, usize), Vec<(Partition, Rational)>>>,
> = Mutex::new(None);

/// Monomial coefficients of the restriction of a basis element to `n_vars`
/// variables, keyed by sorted exponent vector. Cached: image computations
/// revisit the same basis elements constantly.
fn restricted_monomials(
    basis: Basis,
    lambda: &Partition,
    n_vars: usize,
) -> Vec<(Partition, Rational)> {
    match basis {
        Basis::M | Basis::MTilde => {
            if lambda.len() > n_vars {
                return Vec::new();
            }
            let c = if basis == Basis::MTilde { lambda.aut_factor() } else { Rational::one() };
            vec![(lambda.clone(), c)]
        }
        Basis::P | Basis::E => {
            {
                let guard = RESTRICTED_CACHE.lock().unwrap();
                if let Some(map) = guard.as_ref() {
                    if let Some(v) = map.get(&(basis, lambda.clone(), n_vars)) {
                        return v.clone();
                    }
                }
            }
            let poly = expand_in_vars(basis, lambda, n_vars);
            let out: Vec<(Partition, Rational)> = poly
                .into_iter()
                .filter(|(e, _)| e.windows(2).all(|w| w[0] >= w[1]))
                .map(|(e, c)| {
                    let parts: Vec<u32> = e.into_iter().filter(|&x| x > 0).collect();
                    (Partition::of(&parts), c)
                })
                .collect();
            let mut guard = RESTRICTED_CACHE.lock().unwrap();
            guard
                .get_or_insert_with(HashMap::new)
                .insert((basis, lambda.clone(), n_vars), out.clone());
            out
        }
    }
}

fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

fn apply_matrix(mat: &Matrix, v: &[Rational]) -> Vec<Rational> {
    mat.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum::<Rational>())
        .collect()
}

fn invert_matrix(mat: &Matrix) -> Matrix {
    let n = mat.len();
    let mut a: Vec<Vec<Rational>> = mat.clone();
    let mut inv: Matrix = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero()).expect("transition matrix invertible");
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].clone();
        for j in 0..n {
            a[col][j] /= &p;
            inv[col][j] /= &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..n {
                    let av = &a[col][j] * &f;
                    a[r][j] -= av;
                    let iv = &inv[col][j] * &f;
                    inv[r][j] -= iv;
                }
            }
        }
    }
    inv
}

// ----------------------------------------------------------------------
// Tensors
// ----------------------------------------------------------------------

/// A sparse element of the tensor square, both sides in the same basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TensorSeries {
    basis: Basis,
    algebra: Algebra,
    terms: BTreeMap<(Partition, Partition), Rational>,
}

impl TensorSeries {
    pub fn zero(basis: Basis, algebra: Algebra) -> TensorSeries {
        TensorSeries { basis, algebra, terms: BTreeMap::new() }
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn add_term(&mut self, left: Partition, right: Partition, coef: Rational) {
        if coef.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((left, right)) {
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

    pub fn coeff(&self, left: &Partition, right: &Partition) -> Rational {
        self.terms.get(&(left.clone(), right.clone())).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Partition, Partition), &Rational)> {
        self.terms.iter()
    }

    pub fn is_cocommutative(&self) -> bool {
        self.terms.iter().all(|((l, r), c)| self.coeff(r, l) == *c)
    }

    /// Applies the counit on the right factor: keeps terms with empty right
    /// partition as a plain series.
    pub fn contract_right_counit(&self) -> Series {
        let mut s = Series::zero(self.basis, self.algebra);
        for ((l, r), c) in &self.terms {
            if r.is_empty() {
                s.add_term(l.clone(), c.clone());
            }
        }
        s
    }

    pub fn contract_left_counit(&self) -> Series {
        let mut s = Series::zero(self.basis, self.algebra);
        for ((l, r), c) in &self.terms {
            if l.is_empty() {
                s.add_term(r.clone(), c.clone());
            }
        }
        s
    }
}

// ----------------------------------------------------------------------
// Hopf axiom checks
// ----------------------------------------------------------------------

/// Outcome of checking the Hopf axioms on a single element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopfReport {
    pub counit_law: bool,
    pub coassociative: bool,
    pub cocommutative: bool,
    pub antipode_law: bool,
    pub violation: Option<String>,
}

impl HopfReport {
    pub fn passed(&self) -> bool {
        self.counit_law && self.coassociative && self.cocommutative && self.antipode_law
    }
}

/// Verifies the counit law, coassociativity, cocommutativity, and the
/// antipode law on `f`, exactly, in `f`'s ambient algebra.
pub fn hopf_axiom_check(f: &Series) -> Result<HopfReport, SymfuncError> {
    let prim = f.algebra().primitive_basis();
    let fp = f.convert(prim)?;
    let delta = fp.coproduct()?;

    let mut violation = None;
    let note = |ok: bool, what: &str, v: &mut Option<String>| {
        if !ok && v.is_none() {
            *v = Some(what.to_string());
        }
        ok
    };

    // (id ⊗ ε)Δf = f = (ε ⊗ id)Δf
    let counit_law = delta.contract_right_counit().compare(&fp).equal
        && delta.contract_left_counit().compare(&fp).equal;
    note(counit_law, "counit law", &mut violation);

    // (Δ ⊗ id)Δf = (id ⊗ Δ)Δf
    let mut left3: BTreeMap<(Partition, Partition, Partition), Rational> = BTreeMap::new();
    let mut right3: BTreeMap<(Partition, Partition, Partition), Rational> = BTreeMap::new();
    for ((l, r), c) in delta.terms() {
        for (a, b, k) in split_partition(l) {
            let entry = left3.entry((a, b, r.clone())).or_insert_with(Rational::zero);
            *entry += c * Rational::from_integer(k.into());
        }
        for (a, b, k) in split_partition(r) {
            let entry = right3.entry((l.clone(), a, b)).or_insert_with(Rational::zero);
            *entry += c * Rational::from_integer(k.into());
        }
    }
    left3.retain(|_, c| !c.is_zero());
    right3.retain(|_, c| !c.is_zero());
    let coassociative = left3 == right3;
    note(coassociative, "coassociativity", &mut violation);

    let cocommutative = delta.is_cocommutative();
    note(cocommutative, "cocommutativity", &mut violation);

    // Σ S(f₁)·f₂ = ε(f)·1 = Σ f₁·S(f₂); in the multiplicative basis the
    // product of basis elements is the index union.
    let mut s_left = Series::zero(prim, f.algebra());
    let mut s_right = Series::zero(prim, f.algebra());
    for ((l, r), c) in delta.terms() {
        let sign_l = if l.len() % 2 == 0 { c.clone() } else { -c.clone() };
        s_left.add_term(l.union(r), sign_l);
        let sign_r = if r.len() % 2 == 0 { c.clone() } else { -c.clone() };
        s_right.add_term(l.union(r), sign_r);
    }
    let target = Series::one(prim, f.algebra()).scale(&fp.counit());
    let antipode_law = s_left.compare(&target).equal && s_right.compare(&target).equal;
    note(antipode_law, "antipode law", &mut violation);

    Ok(HopfReport { counit_law, coassociative, cocommutative, antipode_law, violation })
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rat_int};

    fn p(parts: &[u32]) -> Series {
        Series::basis_element(Basis::P, Partition::of(parts))
    }

    fn mt(parts: &[u32]) -> Series {
        Series::basis_element(Basis::MTilde, Partition::of(parts))
    }

    #[test]
    fn p_n_equals_m_n_equals_mtilde_n() {
        for n in 1..=6 {
            let pn = p(&[n]).convert(Basis::M).unwrap();
            assert_eq!(pn, Series::basis_element(Basis::M, Partition::of(&[n])));
            let mtn = mt(&[n]).convert(Basis::M).unwrap();
            assert_eq!(mtn, Series::basis_element(Basis::M, Partition::of(&[n])));
        }
    }

    #[test]
    fn mtilde_is_scaled_monomial() {
        // m̃_(1,1) = 2·m_(1,1)
        let f = mt(&[1, 1]).convert(Basis::M).unwrap();
        assert_eq!(f.coeff(&Partition::of(&[1, 1])), rat_int(2));
        // e_1 = m_1
        let e1 = Series::basis_element(Basis::E, Partition::of(&[1])).convert(Basis::M).unwrap();
        assert_eq!(e1, Series::basis_element(Basis::M, Partition::of(&[1])));
    }

    #[test]
    fn conversion_fixtures() {
        // Expanding (x1+x2)^2 = x1^2 + 2 x1 x2 + x2^2 by hand gives
        // p_(1,1) = m_2 + 2 m_(1,1) = m̃_2 + m̃_(1,1).
        let f = p(&[1, 1]).convert(Basis::MTilde).unwrap();
        assert_eq!(f.coeff(&Partition::of(&[2])), rat_int(1));
        assert_eq!(f.coeff(&Partition::of(&[1, 1])), rat_int(1));
        assert_eq!(f.num_terms(), 2);

        // e_2 = m_(1,1) = m̃_(1,1)/2
        let e2 = Series::basis_element(Basis::E, Partition::of(&[2])).convert(Basis::MTilde).unwrap();
        assert_eq!(e2.coeff(&Partition::of(&[1, 1])), rat(1, 2));
        assert_eq!(e2.num_terms(), 1);
    }

    #[test]
    fn round_trips_are_identity() {
        let bases = [Basis::P, Basis::M, Basis::MTilde, Basis::E];
        for d in 0..=8u32 {
            for l in Partition::all_of(d) {
                for &b in &bases {
                    let f = Series::basis_element(b, l.clone());
                    // chain through every other basis and back
                    let mut g = f.clone();
                    for &t in &bases {
                        g = g.convert(t).unwrap();
                    }
                    let g = g.convert(b).unwrap();
                    assert_eq!(g, f, "round trip failed for {:?} {}", b, l);
                }
            }
        }
    }

    #[test]
    fn multiplication_in_each_algebra() {
        // p_λ p_μ = p_{λ⊔μ}
        let f = p(&[2]).multiply(&p(&[1, 1])).unwrap();
        assert_eq!(f, p(&[2, 1, 1]));
        // m̃_λ ⊙ m̃_μ = m̃_{λ⊔μ}
        let a = mt(&[2]).into_algebra(Algebra::LambdaTilde).unwrap();
        let b = mt(&[1, 1]).into_algebra(Algebra::LambdaTilde).unwrap();
        let f = a.multiply(&b).unwrap();
        assert_eq!(f.coeff(&Partition::of(&[2, 1, 1])), rat_int(1));
        assert_eq!(f.num_terms(), 1);
        // unit
        let one = Series::one(Basis::P, Algebra::Lambda);
        assert_eq!(one.multiply(&p(&[3, 1])).unwrap(), p(&[3, 1]));
        // mixed algebras refuse
        assert!(mt(&[1]).into_algebra(Algebra::LambdaTilde).unwrap().multiply(&p(&[1])).is_err());
        // p basis refuses LambdaTilde
        assert!(p(&[1]).into_algebra(Algebra::LambdaTilde).is_err());
    }

    #[test]
    fn multiplication_is_commutative_associative_distributive() {
        // spot check on sparse series of degree ≤ 6
        let f = p(&[2, 1]).add(&p(&[3]).scale(&rat(-1, 2))).unwrap();
        let g = p(&[1]).add(&p(&[2]).scale(&rat_int(3))).unwrap();
        let h = p(&[1, 1]).sub(&p(&[2])).unwrap();
        assert_eq!(f.multiply(&g).unwrap(), g.multiply(&f).unwrap());
        assert_eq!(
            f.multiply(&g).unwrap().multiply(&h).unwrap(),
            f.multiply(&g.multiply(&h).unwrap()).unwrap()
        );
        assert_eq!(
            f.multiply(&g.add(&h).unwrap()).unwrap(),
            f.multiply(&g).unwrap().add(&f.multiply(&h).unwrap()).unwrap()
        );
    }

    #[test]
    fn grading_under_product_and_coproduct() {
        let f = p(&[2, 1]).multiply(&p(&[3])).unwrap();
        assert_eq!(f.homogeneous_degree(), Some(6));
        let t = p(&[2, 1]).coproduct().unwrap();
        for ((l, r), _) in t.terms() {
            assert_eq!(l.size() + r.size(), 3);
        }
    }

    #[test]
    fn coproduct_fixtures() {
        // Δp_2 = p_2 ⊗ 1 + 1 ⊗ p_2
        let t = p(&[2]).coproduct().unwrap();
        assert_eq!(t.coeff(&Partition::of(&[2]), &Partition::empty()), rat_int(1));
        assert_eq!(t.coeff(&Partition::empty(), &Partition::of(&[2])), rat_int(1));
        assert_eq!(t.terms().count(), 2);

        // Δp_(1,1) = p_(1,1)⊗1 + 2(p_1⊗p_1) + 1⊗p_(1,1)
        let t = p(&[1, 1]).coproduct().unwrap();
        assert_eq!(t.coeff(&Partition::of(&[1]), &Partition::of(&[1])), rat_int(2));
        assert_eq!(t.coeff(&Partition::of(&[1, 1]), &Partition::empty()), rat_int(1));

        // Δm̃_(1,1) has coefficient 2 on m̃_1 ⊗ m̃_1
        let t = mt(&[1, 1])
            .into_algebra(Algebra::LambdaTilde)
            .unwrap()
            .coproduct()
            .unwrap();
        assert_eq!(t.coeff(&Partition::of(&[1]), &Partition::of(&[1])), rat_int(2));
        assert!(t.is_cocommutative());
    }

    #[test]
    fn counit_cases() {
        assert_eq!(Series::one(Basis::P, Algebra::Lambda).counit(), rat_int(1));
        assert_eq!(p(&[4]).counit(), rat_int(0));
        let f = Series::one(Basis::P, Algebra::Lambda).scale(&rat_int(3)).add(&p(&[1]).scale(&rat_int(2))).unwrap();
        assert_eq!(f.counit(), rat_int(3));
    }

    #[test]
    fn antipode_fixtures() {
        assert_eq!(p(&[2]).antipode().unwrap(), p(&[2]).scale(&rat_int(-1)));
        assert_eq!(p(&[2, 1]).antipode().unwrap(), p(&[2, 1]));
        let f = mt(&[3, 1, 1]).into_algebra(Algebra::LambdaTilde).unwrap();
        assert_eq!(f.antipode().unwrap(), f.scale(&rat_int(-1)));
        // S(p_λ) = (−1)^ℓ p_λ across degrees; and S is an algebra map
        let f = p(&[2, 1]).multiply(&p(&[3])).unwrap();
        assert_eq!(
            f.antipode().unwrap(),
            p(&[2, 1]).antipode().unwrap().multiply(&p(&[3]).antipode().unwrap()).unwrap()
        );
    }

    #[test]
    fn hopf_axioms_on_basis_elements() {
        let r = hopf_axiom_check(&p(&[2])).unwrap();
        assert!(r.passed(), "{:?}", r);
        let f = mt(&[2, 1]).into_algebra(Algebra::LambdaTilde).unwrap();
        let r = hopf_axiom_check(&f).unwrap();
        assert!(r.passed(), "{:?}", r);
        // and on a mixed element
        let f = p(&[2, 2]).scale(&rat(3, 7)).sub(&p(&[3, 1])).unwrap();
        assert!(hopf_axiom_check(&f).unwrap().passed());
    }

    #[test]
    fn structure_constants_transport_between_algebras() {
        // The p-basis tables over Lambda and the m̃-basis tables over
        // LambdaTilde must match: product, coproduct, antipode.
        for d in 0..=6u32 {
            for l in Partition::all_of(d) {
                let fp = Series::basis_element(Basis::P, l.clone());
                let fm = Series::basis_element_in(Basis::MTilde, l.clone(), Algebra::LambdaTilde);
                // coproduct tables
                let tp = fp.coproduct().unwrap();
                let tm = fm.coproduct().unwrap();
                let tp_map: BTreeMap<_, _> = tp.terms().map(|(k, c)| (k.clone(), c.clone())).collect();
                let tm_map: BTreeMap<_, _> = tm.terms().map(|(k, c)| (k.clone(), c.clone())).collect();
                assert_eq!(tp_map, tm_map, "coproduct constants differ at {}", l);
                // antipode sign
                let sp = fp.antipode().unwrap().coeff(&l);
                let sm = fm.antipode().unwrap().coeff(&l);
                assert_eq!(sp, sm, "antipode constants differ at {}", l);
                // product: p_λ·p_μ and m̃_λ⊙m̃_μ both land on λ⊔μ
                for mu in Partition::all_of(3.min(d)) {
                    let pp = fp.multiply(&Series::basis_element(Basis::P, mu.clone())).unwrap();
                    let mm = fm
                        .multiply(&Series::basis_element_in(Basis::MTilde, mu.clone(), Algebra::LambdaTilde))
                        .unwrap();
                    assert_eq!(pp.coeff(&l.union(&mu)), mm.coeff(&l.union(&mu)));
                    assert_eq!(pp.num_terms(), mm.num_terms());
                }
            }
        }
    }

    #[test]
    fn caps_propagate_and_comparison_reports_cap() {
        let f = p(&[1]).with_cap(3);
        let g = p(&[1]);
        let prod = f.multiply(&g).unwrap();
        assert_eq!(prod.cap(), Some(3));
        let cmp = prod.compare(&p(&[1, 1]));
        assert!(cmp.equal);
        assert_eq!(cmp.up_to, Some(3));
        // a capped series hides higher differences
        let a = p(&[1]).with_cap(2);
        let b = p(&[1]).add(&p(&[4])).unwrap().with_cap(2);
        assert!(a.compare(&b).equal);
    }
}
