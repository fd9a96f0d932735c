//! Deterministic random inputs and a brute-force isomorphism oracle.
//!
//! The random generators exist to sample the pipeline's test universe
//! reproducibly: identical [`RngSpec`]s produce identical outputs on every
//! platform (ChaCha8 keyed by the seed, sampled through plain modular
//! reduction). The brute-force search enumerates all of `GL(m, p)` in a fixed
//! order and is definitionally correct, which makes it the ground truth the
//! invariant pipeline is validated against on small prime fields.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::linalg::Mat;
use crate::msc::{act, Msc};

/// Default cap on `|GL(m, p)|` for the brute-force search.
pub const GL_CAP: u128 = 1_000_000;

/// Seed and entry bound for reproducible sampling. The same spec always
/// reproduces the same value stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RngSpec {
    pub seed: u64,
    /// Maximum absolute value of sampled integers over `Q`; ignored over
    /// prime fields, where entries are uniform residues.
    pub entry_bound: u64,
}

impl RngSpec {
    pub fn new(seed: u64, entry_bound: u64) -> RngSpec {
        RngSpec { seed, entry_bound }
    }

    fn stream(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

fn sample_scalar(field: FieldSpec, bound: u64, rng: &mut ChaCha8Rng) -> crate::field::Scalar {
    match field.modulus() {
        Some(p) => field.from_u64(rng.next_u64() % p),
        None => {
            let span = 2 * bound + 1;
            let v = (rng.next_u64() % span) as i128 - bound as i128;
            field.from_i64(v as i64)
        }
    }
}

fn sample_mat(field: FieldSpec, rows: usize, cols: usize, bound: u64, rng: &mut ChaCha8Rng) -> Mat {
    Mat::from_fn(field, rows, cols, |_, _| sample_scalar(field, bound, rng))
}

/// A random `m`-dimensional algebra: uniform residues over `F_p`, uniform
/// integers in `[-entry_bound, entry_bound]` over `Q`. Deterministic per
/// spec; `entry_bound = 0` over `Q` gives the zero algebra.
pub fn random_algebra(m: usize, field: FieldSpec, spec: &RngSpec) -> Msc {
    let mut rng = spec.stream();
    Msc::new(m, sample_mat(field, m, m * m, spec.entry_bound, &mut rng))
        .expect("sampled matrix has the right shape")
}

/// A random `rows × cols` matrix with the same entry distribution as
/// [`random_algebra`]. Deterministic per spec.
pub fn random_mat(rows: usize, cols: usize, field: FieldSpec, spec: &RngSpec) -> Mat {
    let mut rng = spec.stream();
    sample_mat(field, rows, cols, spec.entry_bound, &mut rng)
}

/// A random nonsingular `m × m` matrix, by rejection on the determinant.
/// Deterministic per spec.
///
/// # Panics
///
/// Over `Q` with `entry_bound = 0` (only the zero matrix could be sampled).
pub fn random_gl(m: usize, field: FieldSpec, spec: &RngSpec) -> Mat {
    assert!(
        field.modulus().is_some() || spec.entry_bound > 0,
        "rational sampling with entry_bound = 0 cannot produce a nonsingular matrix"
    );
    let mut rng = spec.stream();
    loop {
        let g = sample_mat(field, m, m, spec.entry_bound, &mut rng);
        if g.rank() == m {
            return g;
        }
    }
}

/// `|GL(m, p)| = (p^m − 1)(p^m − p) ⋯ (p^m − p^{m−1})`, saturating.
pub fn gl_order(m: usize, p: u64) -> u128 {
    let mut pm: u128 = 1;
    for _ in 0..m {
        pm = pm.saturating_mul(p as u128);
    }
    let mut order: u128 = 1;
    let mut pi: u128 = 1;
    for _ in 0..m {
        order = order.saturating_mul(pm.saturating_sub(pi));
        pi = pi.saturating_mul(p as u128);
    }
    order
}

/// Enumerates the nonsingular `m × m` matrices over `F_p` in ascending
/// lexicographic order of their row-major entry vectors.
pub struct GlEnumerator {
    field: FieldSpec,
    m: usize,
    p: u64,
    entries: Vec<u64>,
    done: bool,
}

impl GlEnumerator {
    pub fn new(m: usize, field: FieldSpec) -> Result<GlEnumerator> {
        let p = field
            .modulus()
            .ok_or(Error::WrongField("GL enumeration needs a prime field"))?;
        Ok(GlEnumerator {
            field,
            m,
            p,
            entries: vec![0; m * m],
            done: false,
        })
    }

    /// Odometer increment on the entry vector, last position fastest.
    fn advance(&mut self) {
        for i in (0..self.entries.len()).rev() {
            self.entries[i] += 1;
            if self.entries[i] < self.p {
                return;
            }
            self.entries[i] = 0;
        }
        self.done = true;
    }
}

impl Iterator for GlEnumerator {
    type Item = Mat;

    fn next(&mut self) -> Option<Mat> {
        while !self.done {
            let g = Mat::from_fn(self.field, self.m, self.m, |r, c| {
                self.field.from_u64(self.entries[r * self.m + c])
            });
            self.advance();
            if g.rank() == self.m {
                return Some(g);
            }
        }
        None
    }
}

/// Outcome of the exhaustive search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BruteForceOutcome {
    /// `witness` is the first basis change in enumeration order with
    /// `act(witness, a) = b`.
    Equivalent { witness: Mat },
    NotEquivalent,
}

/// Exhaustive isomorphism test over a prime field: tries every nonsingular
/// `g` in the fixed enumeration order. See [`brute_force_equivalent_with_cap`].
pub fn brute_force_equivalent(a: &Msc, b: &Msc) -> Result<BruteForceOutcome> {
    brute_force_equivalent_with_cap(a, b, GL_CAP)
}

/// As [`brute_force_equivalent`], refusing to enumerate more than `cap`
/// group elements.
pub fn brute_force_equivalent_with_cap(a: &Msc, b: &Msc, cap: u128) -> Result<BruteForceOutcome> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch(format!(
            "cannot compare dimensions {} and {}",
            a.dim(),
            b.dim()
        )));
    }
    if a.field() != b.field() {
        return Err(Error::FieldMismatch);
    }
    let p = a
        .field()
        .modulus()
        .ok_or(Error::WrongField("brute force needs a prime field"))?;
    let order = gl_order(a.dim(), p);
    if order > cap {
        return Err(Error::CapExceeded { size: order, cap });
    }
    for g in GlEnumerator::new(a.dim(), a.field())? {
        if act(&g, a).expect("enumerated matrices are nonsingular") == *b {
            return Ok(BruteForceOutcome::Equivalent { witness: g });
        }
    }
    Ok(BruteForceOutcome::NotEquivalent)
}
