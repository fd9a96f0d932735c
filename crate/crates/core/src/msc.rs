//! Structure-constant matrices and the basis-change action.
//!
//! An `m`-dimensional algebra with basis `e_1..e_m` is stored as the
//! `m × m²` matrix `A` with `e_j · e_k = Σ_i e_i · A^i_{jk}`. The column
//! index convention is fixed once here: `A^i_{jk}` sits at row `i`, column
//! `(j−1)·m + k` (1-based), so that `u ⊗ v` places `u_j·v_k` at position
//! `(j−1)m + k` and multiplication is `A · (u ⊗ v)`. Consequently the `j`-th
//! block `A_j` (the `m × m` submatrix of columns `(j−1)m+1 .. jm`) satisfies
//! `(A_j)_{i,k} = A^i_{jk}`, and the layout agrees with [`Mat::kron`].
//!
//! A basis change by nonsingular `g` acts as `A ↦ g·A·(g⁻¹ ⊗ g⁻¹)`; two
//! matrices present isomorphic algebras exactly when some `g` maps one to the
//! other. Everything downstream (trace rows, block tensor powers, trace
//! forms) is built from this representation.

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::linalg::Mat;

/// Which of the two partial trace rows to take: `First` contracts the output
/// index against the first factor index (`Σ_i A^i_{ik}`), `Second` against
/// the second (`Σ_i A^i_{ji}`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TraceSide {
    First,
    Second,
}

impl TraceSide {
    pub const BOTH: [TraceSide; 2] = [TraceSide::First, TraceSide::Second];

    /// 1 or 2, for display.
    pub fn index(&self) -> usize {
        match self {
            TraceSide::First => 1,
            TraceSide::Second => 2,
        }
    }
}

/// Matrix of structure constants of an `m`-dimensional algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Msc {
    m: usize,
    mat: Mat,
}

/// Default cap on `m^k` for [`Msc::trace_form`].
pub const TRACE_FORM_CAP: u128 = 1024;

impl Msc {
    /// Wraps an `m × m²` matrix. Fails if the shape is off.
    pub fn new(m: usize, mat: Mat) -> Result<Msc> {
        if m == 0 || mat.rows() != m || mat.cols() != m * m {
            return Err(Error::DimensionMismatch(format!(
                "structure constants for dimension {m} must be {m}x{}, got {}x{}",
                m * m,
                mat.rows(),
                mat.cols()
            )));
        }
        Ok(Msc { m, mat })
    }

    pub fn zero(field: FieldSpec, m: usize) -> Msc {
        Msc {
            m,
            mat: Mat::zeros(field, m, m * m),
        }
    }

    /// Builds the MSC from a multiplication table: `table(j, k)` returns the
    /// coordinates of `e_j · e_k` (0-based indices).
    pub fn from_table(
        field: FieldSpec,
        m: usize,
        mut table: impl FnMut(usize, usize) -> Vec<i64>,
    ) -> Msc {
        let mut mat = Mat::zeros(field, m, m * m);
        for j in 0..m {
            for k in 0..m {
                let coords = table(j, k);
                assert_eq!(coords.len(), m, "product coordinates have length m");
                for (i, v) in coords.iter().enumerate() {
                    mat.set(i, j * m + k, field.from_i64(*v));
                }
            }
        }
        Msc { m, mat }
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    pub fn field(&self) -> FieldSpec {
        self.mat.field()
    }

    pub fn mat(&self) -> &Mat {
        &self.mat
    }

    /// Structure constant `A^i_{jk}` (0-based indices).
    pub fn entry(&self, i: usize, j: usize, k: usize) -> &crate::field::Scalar {
        self.mat.at(i, j * self.m + k)
    }

    /// The blocks `A_1..A_m`: `A_j` is the `m × m` submatrix of columns
    /// `j·m .. (j+1)·m` (0-based), so concatenating them reproduces the MSC.
    pub fn blocks(&self) -> Vec<Mat> {
        (0..self.m)
            .map(|j| self.mat.submatrix(0, j * self.m, self.m, self.m))
            .collect()
    }

    /// Reassembles an MSC from its blocks.
    pub fn from_blocks(blocks: &[Mat]) -> Result<Msc> {
        let m = blocks.len();
        if m == 0 || blocks.iter().any(|b| b.rows() != m || b.cols() != m) {
            return Err(Error::DimensionMismatch(
                "from_blocks needs m blocks of size m x m".into(),
            ));
        }
        Msc::new(m, Mat::hconcat(blocks))
    }

    /// Product of two coordinate vectors (`m × 1` columns) in this algebra:
    /// `A · (u ⊗ v)`.
    pub fn multiply(&self, u: &Mat, v: &Mat) -> Mat {
        assert_eq!((u.rows(), u.cols()), (self.m, 1), "u must be m x 1");
        assert_eq!((v.rows(), v.cols()), (self.m, 1), "v must be m x 1");
        self.mat.mul(&u.kron(v))
    }

    /// Partial trace row of this algebra; see [`trace_row_of`].
    pub fn trace_row(&self, side: TraceSide) -> Mat {
        trace_row_of(&self.mat, side)
    }

    /// The ordered block products of level `k`: entry at multi-index
    /// `(i₁,…,i_k)` (lexicographic, leftmost most significant) is
    /// `A_{i₁}·A_{i₂}⋯A_{i_k}`. Level 1 is just the blocks.
    pub fn block_tensor_power(&self, k: usize) -> Vec<Mat> {
        assert!(k >= 1, "block tensor power needs k >= 1");
        let blocks = self.blocks();
        let mut level: Vec<Mat> = blocks.clone();
        for _ in 1..k {
            level = level
                .iter()
                .flat_map(|p| blocks.iter().map(|b| p.mul(b)))
                .collect();
        }
        level
    }

    /// The level-`k` trace form `T_k(A)`: the symmetric `m^k × m^k` matrix
    /// whose entry at multi-indices `((i₁..i_k), (j₁..j_k))` is the trace of
    /// `(A_{i₁}⋯A_{i_k}) · (A_{j₁}⋯A_{j_k})`. For `k = 1` this is the matrix
    /// of block trace pairings `Tr(A_i A_j)`.
    pub fn trace_form(&self, k: usize) -> Result<TraceForm> {
        self.trace_form_with_cap(k, TRACE_FORM_CAP)
    }

    /// [`Msc::trace_form`] with an explicit cap on `m^k`.
    pub fn trace_form_with_cap(&self, k: usize, cap: u128) -> Result<TraceForm> {
        assert!(k >= 1, "trace form needs k >= 1");
        let size = checked_pow(self.m, k, cap)?;
        let products = self.block_tensor_power(k);
        debug_assert_eq!(products.len(), size);
        let mat = Mat::from_fn(self.field(), size, size, |a, b| {
            trace_of_product(&products[a], &products[b])
        });
        debug_assert!(mat.is_symmetric());
        Ok(TraceForm { k, mat })
    }
}

/// Level-`k` trace form: a symmetric `m^k × m^k` matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceForm {
    pub k: usize,
    pub mat: Mat,
}

/// `m^k` if it stays within `cap`, else `CapExceeded`.
pub(crate) fn checked_pow(m: usize, k: usize, cap: u128) -> Result<usize> {
    let mut size: u128 = 1;
    for _ in 0..k {
        size = size.saturating_mul(m as u128);
        if size > cap {
            return Err(Error::CapExceeded { size, cap });
        }
    }
    Ok(size as usize)
}

/// `Tr(x · y)` without materializing the product.
fn trace_of_product(x: &Mat, y: &Mat) -> crate::field::Scalar {
    assert_eq!(x.cols(), y.rows());
    assert_eq!(y.cols(), x.rows());
    let mut t = x.field().zero();
    for r in 0..x.rows() {
        for c in 0..x.cols() {
            t = t.add(&x.at(r, c).mul(y.at(c, r)));
        }
    }
    t
}

/// Basis-change action on structure constants:
/// `(g, A) ↦ g · A · (g⁻¹ ⊗ g⁻¹)`. Fails when `g` is singular.
pub fn act(g: &Mat, a: &Msc) -> Result<Msc> {
    if g.rows() != a.dim() || g.cols() != a.dim() {
        return Err(Error::DimensionMismatch(format!(
            "basis change must be {0}x{0}, got {1}x{2}",
            a.dim(),
            g.rows(),
            g.cols()
        )));
    }
    let gi = g.inverse()?;
    Msc::new(a.dim(), g.mul(a.mat()).mul(&gi.kron(&gi)))
}

/// Partial trace rows of an arbitrary `m × m²` matrix under the MSC column
/// convention: `First` gives `(Σ_i X^i_{i1}, …, Σ_i X^i_{im})`, `Second`
/// gives `(Σ_i X^i_{1i}, …, Σ_i X^i_{mi})`. Both transform as `r ↦ r·g⁻¹`
/// under the basis-change action.
pub fn trace_row_of(mat: &Mat, side: TraceSide) -> Mat {
    let m = mat.rows();
    assert_eq!(mat.cols(), m * m, "trace rows need an m x m^2 matrix");
    Mat::from_fn(mat.field(), 1, m, |_, out| {
        let mut t = mat.field().zero();
        for i in 0..m {
            let col = match side {
                TraceSide::First => i * m + out,
                TraceSide::Second => out * m + i,
            };
            t = t.add(mat.at(i, col));
        }
        t
    })
}

/// Tensor product over `m × m` blocks: both inputs are read as block
/// matrices with `m × m` blocks, and blocks multiply (as matrices) where
/// scalars would multiply in an ordinary Kronecker product. The result block
/// at `((i,i'), (j,j'))` is `Ablock(i,j) · Bblock(i',j')`.
pub fn block_kron(a: &Mat, b: &Mat, m: usize) -> Mat {
    assert!(a.rows() % m == 0 && a.cols() % m == 0, "a is not m-blocked");
    assert!(b.rows() % m == 0 && b.cols() % m == 0, "b is not m-blocked");
    let (abr, abc) = (a.rows() / m, a.cols() / m);
    let (bbr, bbc) = (b.rows() / m, b.cols() / m);
    let mut out = Mat::zeros(a.field(), abr * bbr * m, abc * bbc * m);
    for i in 0..abr {
        for j in 0..abc {
            let ab = a.submatrix(i * m, j * m, m, m);
            for ii in 0..bbr {
                for jj in 0..bbc {
                    let bb = b.submatrix(ii * m, jj * m, m, m);
                    let prod = ab.mul(&bb);
                    let (r0, c0) = ((i * bbr + ii) * m, (j * bbc + jj) * m);
                    for r in 0..m {
                        for c in 0..m {
                            out.set(r0 + r, c0 + c, prod.at(r, c).clone());
                        }
                    }
                }
            }
        }
    }
    out
}

/// Component-wise trace over `m × m` blocks: collapses each block of a block
/// matrix to its trace. Satisfies `blocktrace((C⊗I)·D·(E⊗I)) = C·blocktrace(D)·E`.
pub fn block_trace(a: &Mat, m: usize) -> Mat {
    assert!(a.rows() % m == 0 && a.cols() % m == 0, "a is not m-blocked");
    Mat::from_fn(a.field(), a.rows() / m, a.cols() / m, |r, c| {
        a.submatrix(r * m, c * m, m, m).trace()
    })
}

/// The split algebra `F ⊕ F` in its idempotent basis: `e_i · e_j = δ_ij e_i`.
pub fn direct_sum_algebra(field: FieldSpec) -> Msc {
    Msc::from_table(field, 2, |j, k| {
        let mut v = vec![0, 0];
        if j == k {
            v[j] = 1;
        }
        v
    })
}

/// The dual numbers `F[x]/(x²)`: `e_1` is the unit, `e_2² = 0`.
pub fn dual_numbers_algebra(field: FieldSpec) -> Msc {
    Msc::from_table(field, 2, |j, k| match (j, k) {
        (0, 0) => vec![1, 0],
        (0, 1) | (1, 0) => vec![0, 1],
        (1, 1) => vec![0, 0],
        _ => unreachable!(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Scalar;
    use proptest::prelude::*;

    fn q() -> FieldSpec {
        FieldSpec::RATIONAL
    }

    fn f5() -> FieldSpec {
        FieldSpec::prime(5).unwrap()
    }

    fn col(field: FieldSpec, v: &[i64]) -> Mat {
        Mat::from_fn(field, v.len(), 1, |r, _| field.from_i64(v[r]))
    }

    // Independent oracle for the examples: structure constants read straight
    // off a multiplication table, no Msc machinery involved.
    fn msc_by_hand(field: FieldSpec, m: usize, table: &dyn Fn(usize, usize) -> Vec<i64>) -> Mat {
        let mut mat = Mat::zeros(field, m, m * m);
        for j in 0..m {
            for k in 0..m {
                for (i, v) in table(j, k).iter().enumerate() {
                    mat.set(i, j * m + k, field.from_i64(*v));
                }
            }
        }
        mat
    }

    #[test]
    fn direct_sum_blocks() {
        let a = direct_sum_algebra(q());
        let table = |j: usize, k: usize| {
            let mut v = vec![0i64, 0];
            if j == k {
                v[j] = 1;
            }
            v
        };
        assert_eq!(a.mat(), &msc_by_hand(q(), 2, &table));
        let blocks = a.blocks();
        assert_eq!(blocks[0], Mat::from_i64(q(), &[&[1, 0], &[0, 0]]));
        assert_eq!(blocks[1], Mat::from_i64(q(), &[&[0, 0], &[0, 1]]));
        assert_eq!(Msc::from_blocks(&blocks).unwrap(), a);
    }

    #[test]
    fn dual_numbers_blocks() {
        let a = dual_numbers_algebra(q());
        let blocks = a.blocks();
        assert_eq!(blocks[0], Mat::identity(q(), 2));
        assert_eq!(blocks[1], Mat::from_i64(q(), &[&[0, 0], &[1, 0]]));
    }

    #[test]
    fn zero_algebra_blocks() {
        let a = Msc::zero(q(), 3);
        assert!(a.blocks().iter().all(Mat::is_zero));
        assert!(a.trace_row(TraceSide::First).is_zero());
        assert!(a.trace_row(TraceSide::Second).is_zero());
    }

    #[test]
    fn multiply_examples() {
        let a = dual_numbers_algebra(q());
        let e1 = col(q(), &[1, 0]);
        let e2 = col(q(), &[0, 1]);
        assert_eq!(a.multiply(&e1, &e2), e2);
        assert!(a.multiply(&e2, &e2).is_zero());
    }

    #[test]
    fn act_identity_and_dimension_one() {
        let a = direct_sum_algebra(q());
        assert_eq!(act(&Mat::identity(q(), 2), &a).unwrap(), a);

        // m = 1: A = [c], g = [t] gives t·c·t⁻² = c/t.
        let c = Msc::new(1, Mat::from_i64(q(), &[&[6]])).unwrap();
        let g = Mat::from_i64(q(), &[&[3]]);
        let b = act(&g, &c).unwrap();
        assert_eq!(b.mat().at(0, 0), &q().from_i64(2));
    }

    #[test]
    fn act_rejects_singular() {
        let a = direct_sum_algebra(q());
        let g = Mat::from_i64(q(), &[&[1, 2], &[2, 4]]);
        assert_eq!(act(&g, &a), Err(Error::SingularMatrix));
    }

    #[test]
    fn trace_rows_of_direct_sum() {
        let a = direct_sum_algebra(q());
        let ones = Mat::from_i64(q(), &[&[1, 1]]);
        assert_eq!(a.trace_row(TraceSide::First), ones);
        assert_eq!(a.trace_row(TraceSide::Second), ones);
    }

    #[test]
    fn block_tensor_power_levels() {
        let a = dual_numbers_algebra(q());
        let blocks = a.blocks();
        assert_eq!(a.block_tensor_power(1), blocks);
        // Level 2 at m = 2 is (A₁², A₁A₂, A₂A₁, A₂²) in that order.
        let lvl2 = a.block_tensor_power(2);
        assert_eq!(lvl2.len(), 4);
        assert_eq!(lvl2[0], blocks[0].mul(&blocks[0]));
        assert_eq!(lvl2[1], blocks[0].mul(&blocks[1]));
        assert_eq!(lvl2[2], blocks[1].mul(&blocks[0]));
        assert_eq!(lvl2[3], blocks[1].mul(&blocks[1]));

        // F ⊕ F: A₁² = A₁, A₂² = A₂ and the cross products vanish.
        let s = direct_sum_algebra(q());
        let sb = s.blocks();
        let lvl2 = s.block_tensor_power(2);
        assert_eq!(lvl2[0], sb[0]);
        assert!(lvl2[1].is_zero());
        assert!(lvl2[2].is_zero());
        assert_eq!(lvl2[3], sb[1]);
    }

    #[test]
    fn trace_form_level_one_values() {
        let s = direct_sum_algebra(q());
        assert_eq!(s.trace_form(1).unwrap().mat, Mat::identity(q(), 2));
        let d = dual_numbers_algebra(q());
        assert_eq!(
            d.trace_form(1).unwrap().mat,
            Mat::from_i64(q(), &[&[2, 0], &[0, 0]])
        );
    }

    #[test]
    fn trace_form_cap() {
        let a = Msc::zero(q(), 3);
        assert!(matches!(
            a.trace_form_with_cap(2, 8),
            Err(Error::CapExceeded { size: 9, cap: 8 })
        ));
        assert!(a.trace_form_with_cap(2, 9).is_ok());
    }

    fn msc_from_entries(field: FieldSpec, m: usize, entries: &[i64]) -> Msc {
        let mut it = entries.iter();
        Msc::new(
            m,
            Mat::from_fn(field, m, m * m, |_, _| field.from_i64(*it.next().unwrap())),
        )
        .unwrap()
    }

    fn mat_from_entries(field: FieldSpec, r: usize, c: usize, entries: &[i64]) -> Mat {
        let mut it = entries.iter();
        Mat::from_fn(field, r, c, |_, _| field.from_i64(*it.next().unwrap()))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        // act(g, act(h, A)) = act(gh, A)
        #[test]
        fn action_composition(fi in 0usize..2,
                              ae in prop::collection::vec(-4i64..5, 12),
                              ge in prop::collection::vec(-4i64..5, 4),
                              he in prop::collection::vec(-4i64..5, 4)) {
            let field = if fi == 0 { q() } else { f5() };
            let a = msc_from_entries(field, 2, &ae);
            let g = mat_from_entries(field, 2, 2, &ge);
            let h = mat_from_entries(field, 2, 2, &he);
            prop_assume!(g.rank() == 2 && h.rank() == 2);
            prop_assert_eq!(
                act(&g, &act(&h, &a).unwrap()).unwrap(),
                act(&g.mul(&h), &a).unwrap()
            );
        }

        // multiply(act(g,A), gu, gv) = g·multiply(A,u,v)
        #[test]
        fn multiplication_equivariance(ae in prop::collection::vec(-4i64..5, 12),
                                       ge in prop::collection::vec(-4i64..5, 4),
                                       ue in prop::collection::vec(-4i64..5, 2),
                                       ve in prop::collection::vec(-4i64..5, 2)) {
            let a = msc_from_entries(q(), 2, &ae);
            let g = mat_from_entries(q(), 2, 2, &ge);
            prop_assume!(g.rank() == 2);
            let u = mat_from_entries(q(), 2, 1, &ue);
            let v = mat_from_entries(q(), 2, 1, &ve);
            let b = act(&g, &a).unwrap();
            prop_assert_eq!(
                b.multiply(&g.mul(&u), &g.mul(&v)),
                g.mul(&a.multiply(&u, &v))
            );
        }

        // Row form of the action: blocks(act(g,A)) reassembled equals
        // (gA₁g⁻¹ | … | gA_mg⁻¹)·(g⁻¹ ⊗ I).
        #[test]
        fn action_block_form(ae in prop::collection::vec(-4i64..5, 12),
                             ge in prop::collection::vec(-4i64..5, 4)) {
            let a = msc_from_entries(q(), 2, &ae);
            let g = mat_from_entries(q(), 2, 2, &ge);
            prop_assume!(g.rank() == 2);
            let gi = g.inverse().unwrap();
            let conj: Vec<Mat> = a.blocks().iter().map(|bl| g.mul(bl).mul(&gi)).collect();
            let rhs = Mat::hconcat(&conj).mul(&gi.kron(&Mat::identity(q(), 2)));
            let b = act(&g, &a).unwrap();
            prop_assert_eq!(b.mat(), &rhs);
        }

        // tr_i(act(g,A)) = tr_i(A)·g⁻¹
        #[test]
        fn trace_row_covariance(fi in 0usize..2,
                                ae in prop::collection::vec(-4i64..5, 12),
                                ge in prop::collection::vec(-4i64..5, 4)) {
            let field = if fi == 0 { q() } else { f5() };
            let a = msc_from_entries(field, 2, &ae);
            let g = mat_from_entries(field, 2, 2, &ge);
            prop_assume!(g.rank() == 2);
            let b = act(&g, &a).unwrap();
            let gi = g.inverse().unwrap();
            for side in TraceSide::BOTH {
                prop_assert_eq!(b.trace_row(side), a.trace_row(side).mul(&gi));
            }
        }

        // T_k(act(g,A)) = ((g⁻¹)^{⊗k})ᵗ · T_k(A) · (g⁻¹)^{⊗k}, and symmetry.
        #[test]
        fn trace_form_covariance(ae in prop::collection::vec(-3i64..4, 12),
                                 ge in prop::collection::vec(-3i64..4, 4),
                                 k in 1usize..4) {
            let a = msc_from_entries(q(), 2, &ae);
            let g = mat_from_entries(q(), 2, 2, &ge);
            prop_assume!(g.rank() == 2);
            let b = act(&g, &a).unwrap();
            let gik = g.inverse().unwrap().kron_pow(k);
            let ta = a.trace_form(k).unwrap().mat;
            let tb = b.trace_form(k).unwrap().mat;
            prop_assert!(ta.is_symmetric());
            prop_assert!(tb.is_symmetric());
            prop_assert_eq!(tb, gik.transpose().mul(&ta).mul(&gik));
        }

        // (C⊗I) ⊗̄ (D⊗I) = (C⊗D) ⊗ I
        #[test]
        fn block_kron_of_scalar_blocks(ce in prop::collection::vec(-4i64..5, 4),
                                       de in prop::collection::vec(-4i64..5, 6)) {
            let m = 2;
            let i = Mat::identity(q(), m);
            let c = mat_from_entries(q(), 2, 2, &ce);
            let d = mat_from_entries(q(), 2, 3, &de);
            prop_assert_eq!(
                block_kron(&c.kron(&i), &d.kron(&i), m),
                c.kron(&d).kron(&i)
            );
        }

        // blocktrace((C⊗I)·D·(E⊗I)) = C·blocktrace(D)·E
        #[test]
        fn block_trace_pulls_out_scalar_blocks(ce in prop::collection::vec(-4i64..5, 6),
                                               de in prop::collection::vec(-4i64..5, 48),
                                               ee in prop::collection::vec(-4i64..5, 12)) {
            let m = 2;
            let i = Mat::identity(q(), m);
            let c = mat_from_entries(q(), 2, 3, &ce);
            let d = mat_from_entries(q(), 6, 8, &de); // 3×4 blocks of size 2
            let e = mat_from_entries(q(), 4, 3, &ee);
            let lhs = block_trace(&c.kron(&i).mul(&d).mul(&e.kron(&i)), m);
            let rhs = c.mul(&block_trace(&d, m)).mul(&e);
            prop_assert_eq!(lhs, rhs);
        }
    }
}
