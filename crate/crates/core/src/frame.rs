//! Covariant frames from trace rows of tensor-power chains.
//!
//! For a generic algebra `A` (nonsingular `T₁`), each pair `(side, level)`
//! yields a row
//!
//! ```text
//! r(A) = Tr_side( Π · (T₁⁻¹)^{⊗2^level} · Πᵗ · T₁ · A ),
//! Π = A^{⊗2⁰} · A^{⊗2¹} ⋯ A^{⊗2^{level−1}}   (Π = I at level 0),
//! ```
//!
//! where `A^{⊗n}` is the ordinary Kronecker power of the `m × m²` matrix and
//! the exponents double at each factor, which is what keeps the chain
//! conformable (`A^{⊗2^l}` maps `m^{2^l}` to `m^{2^{l+1}}` columns). At level
//! 0 the row collapses to the plain trace row. Every such row transforms as
//! `r(act(g, A)) = r(A) · g⁻¹` for every nonsingular `g`, because `T₁`
//! transforms by congruence, so `T₁⁻¹` automatically satisfies the hypothesis
//! the chain needs.
//!
//! A frame is a nonsingular `m × m` matrix of such rows. Rows are scanned in
//! the fixed order `(level 0, side 1), (level 0, side 2), (level 1, side 1),
//! …` and kept exactly when they enlarge the row span, so the frame is a
//! deterministic, equivariant function of the algebra. For algebras with
//! nontrivial automorphisms no frame can exist; that surfaces as the
//! [`Error::FrameDeficient`] outcome rather than a crash.

use crate::error::{Error, Result};
use crate::linalg::{Mat, RowBasis};
use crate::msc::{checked_pow, trace_row_of, Msc, TraceSide};

/// Default cap on `m^(2^level)`, the width of the largest chain factor.
pub const ROW_CAP: u128 = 6561;

/// Identifies a covariant row: which trace row was taken, at which level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RowId {
    pub side: TraceSide,
    pub level: usize,
}

/// A nonsingular matrix of covariant rows, with the rows' identities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frame {
    /// `m × m`, nonsingular; row `r` is `covariant_row(a, provenance[r])`.
    pub matrix: Mat,
    pub provenance: Vec<RowId>,
}

/// Default frame search depth: the largest level worth scanning stays small,
/// and the caps keep dimension-3 tensor powers at 81×6561 worst case.
pub fn default_k_max(m: usize) -> usize {
    if m <= 2 {
        3
    } else {
        2
    }
}

/// The covariant row of `a` for `(side, level)`; see the module docs.
/// Fails with [`Error::NotGeneric`] when `T₁(a)` is singular and with
/// [`Error::CapExceeded`] when `m^(2^level)` passes the default cap.
pub fn covariant_row(a: &Msc, side: TraceSide, level: usize) -> Result<Mat> {
    covariant_row_with_cap(a, side, level, ROW_CAP)
}

/// [`covariant_row`] with an explicit cap on `m^(2^level)`.
pub fn covariant_row_with_cap(a: &Msc, side: TraceSide, level: usize, cap: u128) -> Result<Mat> {
    let m = a.dim();
    if level >= 64 {
        return Err(Error::CapExceeded {
            size: u128::MAX,
            cap,
        });
    }
    let width = 1usize << level;
    checked_pow(m, width, cap)?;

    let t1 = a.trace_form(1)?.mat;
    let t1_inv = t1.inverse().map_err(|_| Error::NotGeneric)?;

    let mut chain = Mat::identity(a.field(), m);
    for l in 0..level {
        chain = chain.mul(&a.mat().kron_pow(1 << l));
    }
    let core = chain
        .mul(&t1_inv.kron_pow(width))
        .mul(&chain.transpose())
        .mul(&t1)
        .mul(a.mat());
    Ok(trace_row_of(&core, side))
}

/// The fixed candidate scan order up to and including `k_max`.
pub fn candidate_rows(k_max: usize) -> impl Iterator<Item = RowId> {
    (0..=k_max).flat_map(|level| TraceSide::BOTH.into_iter().map(move |side| RowId { side, level }))
}

/// Greedily assembles a frame for a normalized generic algebra: candidate
/// rows are scanned in the fixed order and appended exactly when they
/// strictly increase the rank of the accumulated set. Returns
/// [`Error::FrameDeficient`] with the rank achieved when the scan exhausts
/// `k_max` — a legitimate outcome for algebras with symmetries.
pub fn build_frame(abar: &Msc, k_max: usize) -> Result<Frame> {
    let m = abar.dim();
    let mut basis = RowBasis::new(m);
    let mut rows: Vec<Mat> = Vec::with_capacity(m);
    let mut provenance: Vec<RowId> = Vec::with_capacity(m);
    for id in candidate_rows(k_max) {
        let row = covariant_row(abar, id.side, id.level)?;
        if basis.try_add(&row) {
            rows.push(row);
            provenance.push(id);
            if basis.rank() == m {
                break;
            }
        }
    }
    if basis.rank() < m {
        return Err(Error::FrameDeficient {
            achieved_rank: basis.rank(),
        });
    }
    let matrix = Mat::vconcat(&rows);
    debug_assert_eq!(matrix.rank(), m);
    Ok(Frame { matrix, provenance })
}
