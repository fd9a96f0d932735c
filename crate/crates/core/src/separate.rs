//! Separating invariants, the equivalence decision with verified witness,
//! and the rough classification through trace quadratic forms.
//!
//! For a generic algebra `A` with a frame, the pair
//!
//! ```text
//! J₁ = act(P(Ā), Ā)          J₂ = (P(Ā)⁻¹)ᵗ · D · P(Ā)⁻¹
//! ```
//!
//! is invariant under every basis change of `A` (the normalization kills the
//! congruence ambiguity of `T₁`, the frame kills the remaining group action),
//! and two algebras have equal pairs exactly when they are equivalent. `J₁`
//! is in fact a canonical representative of the isomorphism class, and `J₂`
//! is its level-1 trace form. [`compare`] turns equal pairs into an explicit
//! basis-change witness and verifies it exactly before answering, so an
//! `Equivalent` verdict is unconditionally sound. A `NotEquivalent` verdict
//! is sound because the rows entering the frame are covariant for every
//! nonsingular basis change.
//!
//! The rough classification attaches to each algebra the congruence
//! invariants (rank, signature over `Q`, discriminant square class) of its
//! trace forms `T_k`; differing rough invariants rule out equivalence, equal
//! ones decide nothing.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::field::{is_quadratic_residue, rational_sign, Scalar};
use crate::frame::{build_frame, candidate_rows, covariant_row, Frame, RowId};
use crate::linalg::{Mat, RowBasis};
use crate::msc::{act, Msc};
use crate::normalize::{normalize, NormalizedAlgebra};
use crate::numtheory::squarefree_part;

/// The separating invariants of one algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantPair {
    /// Canonical representative of the isomorphism class: `act(P, Ā)`.
    pub canonical: Msc,
    /// `(P⁻¹)ᵗ·D·P⁻¹`, the level-1 trace form of the canonical
    /// representative; symmetric and nonsingular.
    pub gram: Mat,
    /// Which covariant rows built the frame.
    pub provenance: Vec<RowId>,
}

/// First entry at which two invariant pairs differ.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Distinguisher {
    Canonical { row: usize, col: usize },
    Gram { row: usize, col: usize },
}

impl fmt::Display for Distinguisher {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distinguisher::Canonical { row, col } => {
                write!(f, "canonical representative entry ({row},{col})")
            }
            Distinguisher::Gram { row, col } => write!(f, "gram matrix entry ({row},{col})"),
        }
    }
}

/// Which input of [`compare`] a reason refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::Left => write!(f, "left"),
            Side::Right => write!(f, "right"),
        }
    }
}

/// Why [`compare`] could not reach a verdict. These are legitimate outcomes
/// for inputs outside the generic set, not failures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutOfScopeReason {
    /// The level-1 trace form of one input is singular (left side reported
    /// first when both are).
    NotGeneric { side: Side },
    /// The covariant rows of one input never span; its automorphisms are in
    /// the way.
    FrameDeficient { side: Side, achieved_rank: usize },
    /// Individual frames exist but no shared row selection spans both sides.
    ProvenanceMismatch,
}

impl fmt::Display for OutOfScopeReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OutOfScopeReason::NotGeneric { side } => {
                write!(f, "not-generic: {side} trace form is singular")
            }
            OutOfScopeReason::FrameDeficient {
                side,
                achieved_rank,
            } => write!(f, "frame-deficient: {side} side reached rank {achieved_rank} only"),
            OutOfScopeReason::ProvenanceMismatch => write!(f, "provenance-mismatch"),
        }
    }
}

/// Outcome of an equivalence comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// The algebras are isomorphic; `witness` maps the left input to the
    /// right one and has been verified exactly before being returned.
    Equivalent { witness: Mat },
    /// The separating invariants differ at `distinguisher`.
    NotEquivalent { distinguisher: Distinguisher },
    /// The decision procedure does not apply to these inputs.
    OutOfScope { reason: OutOfScopeReason },
}

/// Computes the separating invariants of `a`, searching frame rows up to
/// `k_max`. Fails with [`Error::NotGeneric`] or [`Error::FrameDeficient`]
/// outside the covered set.
pub fn invariants(a: &Msc, k_max: usize) -> Result<InvariantPair> {
    let norm = normalize(a)?;
    let frame = build_frame(&norm.normalized, k_max)?;
    Ok(pair_from(&norm, &frame))
}

fn pair_from(norm: &NormalizedAlgebra, frame: &Frame) -> InvariantPair {
    let p = &frame.matrix;
    let canonical = act(p, &norm.normalized).expect("frame is nonsingular");
    let p_inv = p.inverse().expect("frame is nonsingular");
    let gram = p_inv.transpose().mul(&norm.diagonal).mul(&p_inv);
    InvariantPair {
        canonical,
        gram,
        provenance: frame.provenance.clone(),
    }
}

fn first_difference(a: &InvariantPair, b: &InvariantPair) -> Option<Distinguisher> {
    let (ca, cb) = (a.canonical.mat(), b.canonical.mat());
    for row in 0..ca.rows() {
        for col in 0..ca.cols() {
            if ca.at(row, col) != cb.at(row, col) {
                return Some(Distinguisher::Canonical { row, col });
            }
        }
    }
    for row in 0..a.gram.rows() {
        for col in 0..a.gram.cols() {
            if a.gram.at(row, col) != b.gram.at(row, col) {
                return Some(Distinguisher::Gram { row, col });
            }
        }
    }
    None
}

/// Joint greedy scan: keeps a candidate row only when it enlarges the span
/// on *both* sides, so the two frames end up with one shared provenance.
fn build_frames_shared(x: &Msc, y: &Msc, k_max: usize) -> Result<Option<(Frame, Frame)>> {
    let m = x.dim();
    let mut bx = RowBasis::new(m);
    let mut by = RowBasis::new(m);
    let mut rows_x = Vec::with_capacity(m);
    let mut rows_y = Vec::with_capacity(m);
    let mut provenance = Vec::with_capacity(m);
    for id in candidate_rows(k_max) {
        let rx = covariant_row(x, id.side, id.level)?;
        let ry = covariant_row(y, id.side, id.level)?;
        if bx.accepts(&rx) && by.accepts(&ry) {
            bx.try_add(&rx);
            by.try_add(&ry);
            rows_x.push(rx);
            rows_y.push(ry);
            provenance.push(id);
            if provenance.len() == m {
                break;
            }
        }
    }
    if provenance.len() < m {
        return Ok(None);
    }
    Ok(Some((
        Frame {
            matrix: Mat::vconcat(&rows_x),
            provenance: provenance.clone(),
        },
        Frame {
            matrix: Mat::vconcat(&rows_y),
            provenance,
        },
    )))
}

/// Decides whether `a` and `b` are equivalent (isomorphic under basis
/// change).
///
/// On success the verdict is one of: `Equivalent` with an exactly verified
/// witness `g` (so `act(g, a) = b`), `NotEquivalent` with the first differing
/// invariant entry, or `OutOfScope` when either side leaves the generic set
/// the method covers. Differing frame provenances are *not* treated as
/// inequivalence; the frames are rebuilt over a shared row selection first,
/// and only if no shared selection spans does the comparison give up with
/// `ProvenanceMismatch`.
pub fn compare(a: &Msc, b: &Msc, k_max: usize) -> Result<Verdict> {
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
    let out_of_scope = |reason| Ok(Verdict::OutOfScope { reason });

    let na = match normalize(a) {
        Ok(n) => n,
        Err(Error::NotGeneric) => return out_of_scope(OutOfScopeReason::NotGeneric { side: Side::Left }),
        Err(e) => return Err(e),
    };
    let nb = match normalize(b) {
        Ok(n) => n,
        Err(Error::NotGeneric) => {
            return out_of_scope(OutOfScopeReason::NotGeneric { side: Side::Right })
        }
        Err(e) => return Err(e),
    };

    let fa = match build_frame(&na.normalized, k_max) {
        Ok(f) => f,
        Err(Error::FrameDeficient { achieved_rank }) => {
            return out_of_scope(OutOfScopeReason::FrameDeficient {
                side: Side::Left,
                achieved_rank,
            })
        }
        Err(e) => return Err(e),
    };
    let fb = match build_frame(&nb.normalized, k_max) {
        Ok(f) => f,
        Err(Error::FrameDeficient { achieved_rank }) => {
            return out_of_scope(OutOfScopeReason::FrameDeficient {
                side: Side::Right,
                achieved_rank,
            })
        }
        Err(e) => return Err(e),
    };

    let (fa, fb) = if fa.provenance == fb.provenance {
        (fa, fb)
    } else {
        match build_frames_shared(&na.normalized, &nb.normalized, k_max)? {
            Some(pair) => pair,
            None => return out_of_scope(OutOfScopeReason::ProvenanceMismatch),
        }
    };

    let pa = pair_from(&na, &fa);
    let pb = pair_from(&nb, &fb);
    if let Some(distinguisher) = first_difference(&pa, &pb) {
        return Ok(Verdict::NotEquivalent { distinguisher });
    }

    // Equal invariants: reconstruct the witness and verify it exactly.
    let g0 = fb
        .matrix
        .inverse()
        .expect("frame is nonsingular")
        .mul(&fa.matrix);
    let g = nb
        .transform
        .inverse()
        .expect("normalizing transform is nonsingular")
        .mul(&g0)
        .mul(&na.transform);
    let maps_a_to_b = act(&g, a)? == *b;
    let preserves_diagonal = g0.transpose().mul(&nb.diagonal).mul(&g0) == na.diagonal;
    if maps_a_to_b && preserves_diagonal {
        Ok(Verdict::Equivalent { witness: g })
    } else {
        Err(Error::InternalInconsistency(format!(
            "invariants match but witness verification failed \
             (maps_a_to_b: {maps_a_to_b}, preserves_diagonal: {preserves_diagonal})\n\
             left input:\n{}\nright input:\n{}\nwitness candidate:\n{}\n\
             normalized-level candidate:\n{}\nleft diagonal:\n{}\nright diagonal:\n{}",
            a.mat(),
            b.mat(),
            g,
            g0,
            na.diagonal,
            nb.diagonal,
        )))
    }
}

/// Square class of the discriminant of the nondegenerate part of a form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DiscClass {
    /// Squarefree integer representing the class of the product of nonzero
    /// diagonal entries (empty product gives 1).
    Rational(BigInt),
    /// Over `F_p`: whether that product is a square.
    PrimeResidue { is_square: bool },
}

impl fmt::Display for DiscClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DiscClass::Rational(n) => write!(f, "{n}"),
            DiscClass::PrimeResidue { is_square: true } => write!(f, "square"),
            DiscClass::PrimeResidue { is_square: false } => write!(f, "nonsquare"),
        }
    }
}

/// Congruence invariants of a trace form `T_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoughInvariants {
    pub k: usize,
    pub rank: usize,
    /// `(positive, negative, zero)` diagonal counts; rational field only.
    pub signature: Option<(usize, usize, usize)>,
    pub disc_class: DiscClass,
}

/// Rank, signature (over `Q`) and discriminant class of `T_k(a)`, read off a
/// congruence diagonalization. All three are invariant under basis changes
/// of the algebra.
pub fn rough_invariants(a: &Msc, k: usize) -> Result<RoughInvariants> {
    let tf = a.trace_form(k)?;
    let (_, d) = tf
        .mat
        .congruence_diagonalize()
        .expect("trace forms are symmetric");
    let n = d.rows();
    let nonzero: Vec<&Scalar> = (0..n).map(|i| d.at(i, i)).filter(|s| !s.is_zero()).collect();
    let rank = nonzero.len();
    if a.field().is_rational() {
        let pos = nonzero.iter().filter(|s| rational_sign(s) > 0).count();
        let neg = rank - pos;
        let mut product = BigRational::one();
        for s in &nonzero {
            product *= s.as_rational().expect("rational field");
        }
        let disc = squarefree_part(&(product.numer() * product.denom()));
        Ok(RoughInvariants {
            k,
            rank,
            signature: Some((pos, neg, n - rank)),
            disc_class: DiscClass::Rational(disc),
        })
    } else {
        let p = a.field().modulus().expect("prime field");
        let mut product = 1u64;
        for s in &nonzero {
            let (_, val) = s.as_prime().expect("prime field");
            product = ((product as u128 * val as u128) % p as u128) as u64;
        }
        Ok(RoughInvariants {
            k,
            rank,
            signature: None,
            disc_class: DiscClass::PrimeResidue {
                is_square: is_quadratic_residue(product, p),
            },
        })
    }
}

/// Outcome of a rough comparison: the computed invariants are necessary but
/// not sufficient for quadratic-form equivalence over non-closed fields, so
/// agreement decides nothing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RoughVerdict {
    DefinitelyNotEquivalent,
    PossiblyEquivalent,
}

/// Compares the rough invariants of `a` and `b` at every level `1..=k`.
pub fn rough_compare(a: &Msc, b: &Msc, k: usize) -> Result<RoughVerdict> {
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
    for level in 1..=k {
        if rough_invariants(a, level)? != rough_invariants(b, level)? {
            return Ok(RoughVerdict::DefinitelyNotEquivalent);
        }
    }
    Ok(RoughVerdict::PossiblyEquivalent)
}
