//! Eigenvariety cardinality and structure.
//!
//! For a connected k-uniform hypergraph, the eigenvectors at the spectral
//! radius (adjacency) and at zero (Laplacian) form a finite set in
//! projective space whose size and abelian-group shape come from the
//! Smith normal form of the incidence matrix over Z_k: with invariant
//! divisors d_1, ..., d_r (those whose gcd with k stays below k),
//! the cardinality is `k^{n-r-1} * prod d_i`.
//!
//! Points are represented concretely as phase vectors: residues c mod k
//! with every edge sum congruent to zero, pinned at c_1 = 0 to kill the
//! global root-of-unity shift. Each phase certifies itself through the
//! eigen-equation in exact exponent arithmetic, and numerically as a
//! complex eigenvector residual.

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, IncidenceMatrix};
use crate::snf::snf_integer;
use crate::spectral::PerronData;
use crate::tensor::{adjacency_tensor, CubicalTensor};
use crate::{Cplx, Int, Limits};
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;
use std::collections::BTreeSet;

/// Which operator a phase vector is certified against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Operator {
    /// Adjacency tensor at the spectral radius.
    Adjacency,
    /// Laplacian tensor at zero.
    Laplacian,
}

/// Invariant divisors, rank, cardinality, and group shape of the
/// eigenvariety at the spectral radius / at zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EigenvarietyDescription {
    pub k: usize,
    pub n: usize,
    /// Mod-k invariant divisors d_1 | ... | d_r, each dividing k.
    pub invariants: Vec<u64>,
    pub rank: usize,
    /// k^{n-r-1} * prod d_i, as a decimal string (it can exceed u64).
    pub cardinality: String,
    /// Cyclic factor orders: the d_i different from 1, then n-r-1 copies of k.
    pub group: Vec<u64>,
}

impl EigenvarietyDescription {
    pub fn cardinality_int(&self) -> Int {
        self.cardinality.parse().expect("cardinality is decimal")
    }
}

/// Mod-k invariant divisors of an incidence matrix: gcd(s_i, k) for the
/// integer SNF invariants s_i, keeping those below k; r is the count kept.
pub fn snf_mod_k(b: &IncidenceMatrix, k: usize) -> Result<(Vec<u64>, usize)> {
    let snf = snf_integer(&b.to_int_matrix())?;
    let kk = Int::from(k as u64);
    let mut divisors = Vec::new();
    for s in &snf.invariants {
        let g = gcd_int(s, &kk);
        if g != kk {
            divisors.push(g.to_u64().expect("divisor of k fits u64"));
        }
    }
    Ok((divisors.clone(), divisors.len()))
}

fn gcd_int(a: &Int, b: &Int) -> Int {
    num_integer::Integer::gcd(a, b)
}

/// Full eigenvariety description of a connected hypergraph.
pub fn describe(h: &Hypergraph) -> Result<EigenvarietyDescription> {
    if !h.is_connected() {
        return Err(Error::Disconnected("eigenvariety description"));
    }
    let k = h.k();
    let n = h.n();
    let (invariants, rank) = snf_mod_k(&h.incidence_matrix(), k)?;
    if h.m() > 0 && !(1 <= rank && rank < n) {
        return Err(Error::ConsistencyCheck(format!(
            "mod-k incidence rank {rank} escapes 1..={}",
            n - 1
        )));
    }
    let mut card = Int::from(k as u64).pow((n - rank - 1) as u32);
    for &d in &invariants {
        card *= Int::from(d);
    }
    let mut group: Vec<u64> = invariants.iter().copied().filter(|&d| d != 1).collect();
    group.extend(std::iter::repeat_n(k as u64, n - rank - 1));
    Ok(EigenvarietyDescription {
        k,
        n,
        invariants,
        rank,
        cardinality: card.to_string(),
        group,
    })
}

/// `|V_rho(A(H))| = |V_0(L(H))| = k^{n-r-1} * prod d_i`.
pub fn cardinality(h: &Hypergraph) -> Result<Int> {
    Ok(describe(h)?.cardinality_int())
}

/// Phase vector: residues mod k, one per vertex, first residue pinned to 0.
/// Every edge sums to 0 mod k.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct PhaseVector {
    pub residues: Vec<u32>,
}

/// Exact termwise certificate: x_v = u_v zeta^{c_v} solves the
/// eigen-equation (at rho for adjacency with the Perron u, at 0 for the
/// Laplacian with u = 1) precisely when every edge sum vanishes mod k.
pub fn verify_phase(h: &Hypergraph, residues: &[u32], _operator: Operator) -> bool {
    if residues.len() != h.n() {
        return false;
    }
    let k = h.k() as u64;
    h.edges().iter().all(|e| {
        let sum: u64 = e.iter().map(|&v| residues[v] as u64).sum();
        sum.is_multiple_of(k)
    })
}

/// All phase vectors modulo the global shift. Brute force over the k^n
/// state space under the cap; otherwise the solutions are reconstructed
/// from the SNF witnesses (kernel construction) and deduplicated.
pub fn enumerate_phases(h: &Hypergraph, limits: &Limits) -> Result<Vec<PhaseVector>> {
    if !h.is_connected() {
        return Err(Error::Disconnected("phase enumeration"));
    }
    let n = h.n();
    let k = h.k() as u32;
    let states = (k as u128).checked_pow(n as u32);
    let brute_ok = states.is_some_and(|s| s <= limits.enum_cap as u128);
    if brute_ok {
        return Ok(enumerate_brute(h));
    }
    enumerate_via_snf(h, limits)
}

fn enumerate_brute(h: &Hypergraph) -> Vec<PhaseVector> {
    let n = h.n();
    let k = h.k() as u32;
    let mut out = Vec::new();
    // first residue pinned to zero: odometer over the remaining n-1
    let mut c = vec![0u32; n];
    loop {
        if verify_phase(h, &c, Operator::Laplacian) {
            out.push(PhaseVector { residues: c.clone() });
        }
        // increment positions 1..n
        let mut pos = n - 1;
        loop {
            if pos == 0 {
                return out;
            }
            c[pos] += 1;
            if c[pos] < k {
                break;
            }
            c[pos] = 0;
            pos -= 1;
        }
    }
}

fn enumerate_via_snf(h: &Hypergraph, limits: &Limits) -> Result<Vec<PhaseVector>> {
    let n = h.n();
    let k = h.k() as u64;
    let snf = snf_integer(&h.incidence_matrix().to_int_matrix())?;
    let kk = Int::from(k);

    // Solutions of B c = 0 (mod k) are c = V y (mod k) with s_i y_i = 0
    // (mod k): y_i runs over the d_i = gcd(s_i, k) multiples of k / d_i,
    // and freely (d_i = k) past the diagonal.
    let t = snf.invariants.len();
    let mut radices: Vec<u64> = Vec::with_capacity(n);
    for i in 0..n {
        let d = if i < t {
            gcd_int(&snf.invariants[i], &kk).to_u64().unwrap()
        } else {
            k
        };
        radices.push(d);
    }
    let total = radices
        .iter()
        .try_fold(1u128, |acc, &d| acc.checked_mul(d as u128))
        .unwrap_or(u128::MAX);
    if total > limits.enum_cap as u128 {
        return Err(Error::EnumerationGuard {
            states: total,
            cap: limits.enum_cap,
        });
    }

    let v = &snf.right;
    let mut set = BTreeSet::new();
    let mut digits = vec![0u64; n];
    loop {
        // y_i = digits_i * (k / d_i); c = V y mod k, then shift c_1 to 0
        let y: Vec<u64> = digits
            .iter()
            .zip(&radices)
            .map(|(&dig, &d)| dig * (k / d) % k)
            .collect();
        let mut c = vec![0u32; n];
        for row in 0..n {
            let mut acc = Int::zero();
            for col in 0..n {
                if y[col] != 0 {
                    acc += &v[(row, col)] * Int::from(y[col]);
                }
            }
            let r = num_integer::Integer::mod_floor(&acc, &kk);
            c[row] = r.to_u64().unwrap() as u32;
        }
        let shift = c[0];
        let kk32 = k as u32;
        for r in c.iter_mut() {
            *r = (*r + kk32 - shift) % kk32;
        }
        debug_assert!(verify_phase(h, &c, Operator::Laplacian));
        set.insert(PhaseVector { residues: c });

        let mut pos = n;
        loop {
            if pos == 0 {
                return Ok(set.into_iter().collect());
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < radices[pos] {
                break;
            }
            digits[pos] = 0;
        }
    }
}

/// Concrete eigenvector built from a phase vector, with its floating
/// residual against the eigen-equation.
#[derive(Debug, Clone)]
pub struct PhaseEigenvector {
    pub vector: Vec<Cplx>,
    pub lambda: Cplx,
    pub residual: f64,
}

/// x_v = u_v * exp(2 pi i c_v / k) with u the Perron vector (adjacency)
/// or all-ones (Laplacian); reports the max-norm residual of
/// `T x^{k-1} - lambda x^{[k-1]}`.
pub fn phase_to_eigenvector(
    h: &Hypergraph,
    phase: &PhaseVector,
    operator: Operator,
    perron: Option<&PerronData>,
) -> Result<PhaseEigenvector> {
    if phase.residues.len() != h.n() {
        return Err(Error::DimensionMismatch {
            context: "phase vector",
            expected: h.n(),
            found: phase.residues.len(),
        });
    }
    let k = h.k();
    let (tensor, lambda, magnitudes): (CubicalTensor<Cplx>, Cplx, Vec<f64>) = match operator {
        Operator::Adjacency => {
            let p = perron.ok_or_else(|| {
                Error::InvalidParameter(
                    "adjacency eigenvectors need Perron data; run the power iteration first"
                        .into(),
                )
            })?;
            let a: crate::FloatTensor = adjacency_tensor(h);
            (
                a.map(|&v| Cplx::new(v, 0.0)),
                Cplx::new(p.rho, 0.0),
                p.vector.clone(),
            )
        }
        Operator::Laplacian => {
            let l: crate::FloatTensor = crate::tensor::laplacian_tensor(h);
            (
                l.map(|&v| Cplx::new(v, 0.0)),
                Cplx::zero(),
                vec![1.0; h.n()],
            )
        }
    };
    let vector: Vec<Cplx> = phase
        .residues
        .iter()
        .zip(&magnitudes)
        .map(|(&c, &u)| {
            let theta = 2.0 * std::f64::consts::PI * c as f64 / k as f64;
            Cplx::new(u * theta.cos(), u * theta.sin())
        })
        .collect();
    let lhs = tensor.apply(&vector)?;
    let mut residual = 0.0f64;
    for (i, x) in vector.iter().enumerate() {
        let mut pow = Cplx::one();
        for _ in 0..k - 1 {
            pow *= x;
        }
        let r = (lhs[i] - lambda * pow).norm();
        residual = residual.max(r);
    }
    Ok(PhaseEigenvector {
        vector,
        lambda,
        residual,
    })
}

// ---------------------------------------------------------------------------
// Closed-form family values
// ---------------------------------------------------------------------------

/// A hypergraph family with a known closed-form eigenvariety cardinality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilyDescriptor {
    /// Hypertree with m edges: k^{m(k-2)}.
    Hypertree { k: usize, m: usize },
    /// k-th power of a connected graph with n vertices, m edges:
    /// k^{n + m(k-3) - 1}.
    PowerGraph { k: usize, graph_n: usize, graph_m: usize },
    /// Complete hypergraph on n > k vertices: 1.
    Complete { n: usize, k: usize },
    /// Cored hypergraph (every edge holds a degree-one vertex) on n
    /// vertices with m edges: k^{n-m-1}.
    Cored { k: usize, n: usize, m: usize },
    /// Generalized squid S(k, t): k^{(t+1)(k-2)}.
    Squid { k: usize, t: usize },
}

/// The closed-form cardinality for a named family.
pub fn family_cardinality(d: &FamilyDescriptor) -> Result<Int> {
    let pow = |k: usize, e: i64| -> Result<Int> {
        if e < 0 {
            return Err(Error::InvalidParameter(format!(
                "family exponent {e} is negative"
            )));
        }
        Ok(Int::from(k as u64).pow(e as u32))
    };
    match *d {
        FamilyDescriptor::Hypertree { k, m } => pow(k, (m * (k - 2)) as i64),
        FamilyDescriptor::PowerGraph { k, graph_n, graph_m } => pow(
            k,
            graph_n as i64 + graph_m as i64 * (k as i64 - 3) - 1,
        ),
        FamilyDescriptor::Complete { n, k } => {
            if n <= k {
                return Err(Error::InvalidParameter(format!(
                    "complete-family formula needs n > k, got n={n}, k={k}"
                )));
            }
            Ok(Int::one())
        }
        FamilyDescriptor::Cored { k, n, m } => pow(k, n as i64 - m as i64 - 1),
        FamilyDescriptor::Squid { k, t } => pow(k, ((t + 1) * (k - 2)) as i64),
    }
}

/// Coalescence multiplies cardinalities.
pub fn coalescence_cardinality(h1: &Hypergraph, h2: &Hypergraph) -> Result<Int> {
    if h1.k() != h2.k() {
        return Err(Error::UniformityMismatch {
            left: h1.k(),
            right: h2.k(),
        });
    }
    if h1.n() < 2 || h2.n() < 2 {
        return Err(Error::TrivialHypergraph("coalescence cardinality"));
    }
    Ok(cardinality(h1)? * cardinality(h2)?)
}

/// Cartesian-product cardinality from the factors' SNF data:
/// `k^{(n1-r1)(n2-r2)-1} * prod gcd(d_i, d'_j) * prod d_i^{n2-r2} * prod d'_j^{n1-r1}`.
pub fn cartesian_cardinality(h1: &Hypergraph, h2: &Hypergraph) -> Result<Int> {
    if h1.k() != h2.k() {
        return Err(Error::UniformityMismatch {
            left: h1.k(),
            right: h2.k(),
        });
    }
    let k = h1.k() as u64;
    let (d1, r1) = snf_mod_k(&h1.incidence_matrix(), h1.k())?;
    let (d2, r2) = snf_mod_k(&h2.incidence_matrix(), h2.k())?;
    let f1 = h1.n() - r1;
    let f2 = h2.n() - r2;
    let mut card = Int::from(k).pow((f1 * f2 - 1) as u32);
    for &a in &d1 {
        for &b in &d2 {
            card *= Int::from(num_integer::Integer::gcd(&a, &b));
        }
    }
    for &a in &d1 {
        card *= Int::from(a).pow(f2 as u32);
    }
    for &b in &d2 {
        card *= Int::from(b).pow(f1 as u32);
    }
    Ok(card)
}

// ---------------------------------------------------------------------------
// Signless Laplacian at zero
// ---------------------------------------------------------------------------

/// Outcome of the zero-eigenvalue probe for the signless Laplacian.
#[derive(Debug, Clone)]
pub enum SignlessZero {
    /// No phase-type zero eigenvector exists (always the case for odd k);
    /// zero is reported as not an eigenvalue.
    NotAnEigenvalue,
    /// Zero is an eigenvalue; phases satisfy edge sums of k/2 mod k.
    Eigenvalue {
        count: Int,
        phases: Option<Vec<PhaseVector>>,
    },
}

/// Zero eigenvalue of Q(H): solvable exactly when k is even and the
/// system "every edge sums to k/2 mod k" is consistent; each returned
/// phase satisfies the eigen-equation termwise with x = zeta^c.
pub fn signless_zero(h: &Hypergraph, limits: &Limits) -> Result<SignlessZero> {
    if !h.is_connected() {
        return Err(Error::Disconnected("signless Laplacian zero probe"));
    }
    let k = h.k();
    if k % 2 == 1 {
        return Ok(SignlessZero::NotAnEigenvalue);
    }
    let n = h.n();
    let half = (k / 2) as u64;
    let kk = Int::from(k as u64);
    let snf = snf_integer(&h.incidence_matrix().to_int_matrix())?;
    let m = h.m();

    // Solve B c = (k/2, ..., k/2) mod k through U B V = diag(s):
    // with z = U b, need s_i y_i = z_i (mod k) for i < t and z_i = 0 past
    // the rank; then c = V y.
    let b_target: Vec<Int> = vec![Int::from(half); m];
    let mut z = Vec::with_capacity(m);
    for i in 0..m {
        let mut acc = Int::zero();
        for (j, b) in b_target.iter().enumerate() {
            acc += &snf.left[(i, j)] * b;
        }
        z.push(num_integer::Integer::mod_floor(&acc, &kk));
    }
    let t = snf.invariants.len();
    let mut particular_y = vec![0u64; n];
    for i in 0..m {
        if i < t {
            let s_mod = num_integer::Integer::mod_floor(&snf.invariants[i], &kk)
                .to_u64()
                .unwrap();
            let zi = z[i].to_u64().unwrap();
            // s y = z (mod k) is solvable iff gcd(s, k) divides z
            let g = if s_mod == 0 {
                k as u64
            } else {
                num_integer::Integer::gcd(&s_mod, &(k as u64))
            };
            if zi % g != 0 {
                return Ok(SignlessZero::NotAnEigenvalue);
            }
            if s_mod != 0 {
                let kg = k as u64 / g;
                if kg > 1 {
                    let inv = mod_inverse(s_mod / g % kg, kg).ok_or_else(|| {
                        Error::ConsistencyCheck("modular inverse must exist".into())
                    })?;
                    particular_y[i] = (zi / g) % kg * inv % kg;
                }
            }
        } else if !z[i].is_zero() {
            return Ok(SignlessZero::NotAnEigenvalue);
        }
    }

    // particular solution c0 = V y mod k
    let c0: Vec<u32> = (0..n)
        .map(|row| {
            let mut acc = Int::zero();
            for (col, &y) in particular_y.iter().enumerate() {
                if y != 0 {
                    acc += &snf.right[(row, col)] * Int::from(y);
                }
            }
            num_integer::Integer::mod_floor(&acc, &kk).to_u64().unwrap() as u32
        })
        .collect();
    debug_assert!(h.edges().iter().all(|e| {
        let sum: u64 = e.iter().map(|&v| c0[v] as u64).sum();
        sum % k as u64 == half
    }));

    // solution count equals the homogeneous count (projectively, the
    // eigenvariety cardinality)
    let count = cardinality(h)?;
    let phases = match enumerate_phases(h, limits) {
        Ok(kernel) => {
            let k32 = k as u32;
            let mut set = BTreeSet::new();
            for ph in kernel {
                let mut c: Vec<u32> = ph
                    .residues
                    .iter()
                    .zip(&c0)
                    .map(|(&a, &b)| (a + b) % k32)
                    .collect();
                let shift = c[0];
                for r in c.iter_mut() {
                    *r = (*r + k32 - shift) % k32;
                }
                set.insert(PhaseVector { residues: c });
            }
            Some(set.into_iter().collect())
        }
        Err(Error::EnumerationGuard { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(SignlessZero::Eigenvalue { count, phases })
}

fn mod_inverse(a: u64, modulus: u64) -> Option<u64> {
    if modulus == 1 {
        return Some(0);
    }
    let (mut t, mut new_t): (i128, i128) = (0, 1);
    let (mut r, mut new_r): (i128, i128) = (modulus as i128, (a % modulus) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    if r > 1 {
        return None;
    }
    Some(((t % modulus as i128 + modulus as i128) % modulus as i128) as u64)
}
