//! Normalized representatives: diagonalizing the level-1 trace form.
//!
//! An algebra is *generic* when its level-1 trace form `T₁(A) = (Tr(A_iA_j))`
//! is nonsingular. For a generic algebra, congruence-diagonalizing `T₁(A)`
//! into `(Q⁻¹)ᵗ·T₁(A)·Q⁻¹ = D` and changing basis by `Q` yields a
//! representative whose trace form is exactly the diagonal `D`. Genericity is
//! preserved by basis changes (the trace form transforms by congruence), so
//! this is a well-defined first normalization step of the pipeline.

use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::msc::{act, Msc};

/// A generic algebra together with its diagonalizing data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizedAlgebra {
    /// The input algebra.
    pub original: Msc,
    /// The representative in the diagonalizing basis: `act(transform, original)`.
    pub normalized: Msc,
    /// The basis change `Q` applied to reach `normalized`.
    pub transform: Mat,
    /// `D = T₁(normalized)`: diagonal and nonsingular.
    pub diagonal: Mat,
}

/// Whether the level-1 trace form of `a` is nonsingular.
pub fn is_generic(a: &Msc) -> bool {
    let t1 = a.trace_form(1).expect("level 1 is always under the cap");
    t1.mat.rank() == a.dim()
}

/// Diagonalizes the level-1 trace form and moves `a` into that basis.
/// Deterministic; fails with [`Error::NotGeneric`] when the form is singular.
///
/// If `T₁(a)` is already diagonal (and nonsingular) the transform is the
/// identity and the algebra is returned unchanged.
pub fn normalize(a: &Msc) -> Result<NormalizedAlgebra> {
    let t1 = a.trace_form(1)?.mat;
    if t1.rank() < a.dim() {
        return Err(Error::NotGeneric);
    }
    let (q, d) = t1.congruence_diagonalize()?;
    let normalized = act(&q, a).expect("Q is nonsingular");
    debug_assert_eq!(normalized.trace_form(1)?.mat, d);
    Ok(NormalizedAlgebra {
        original: a.clone(),
        normalized,
        transform: q,
        diagonal: d,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::msc::{direct_sum_algebra, dual_numbers_algebra};
    use proptest::prelude::*;

    fn q() -> FieldSpec {
        FieldSpec::RATIONAL
    }

    #[test]
    fn genericity_of_the_named_algebras() {
        assert!(is_generic(&direct_sum_algebra(q())));
        assert!(!is_generic(&dual_numbers_algebra(q())));
        assert!(!is_generic(&Msc::zero(q(), 2)));
    }

    #[test]
    fn direct_sum_is_its_own_normal_form() {
        let a = direct_sum_algebra(q());
        let n = normalize(&a).unwrap();
        assert_eq!(n.transform, Mat::identity(q(), 2));
        assert_eq!(n.diagonal, Mat::identity(q(), 2));
        assert_eq!(n.normalized, a);
    }

    #[test]
    fn non_generic_is_rejected() {
        assert_eq!(
            normalize(&dual_numbers_algebra(q())),
            Err(Error::NotGeneric)
        );
    }

    fn msc_from(field: FieldSpec, m: usize, entries: &[i64]) -> Msc {
        let mut it = entries.iter();
        Msc::new(
            m,
            Mat::from_fn(field, m, m * m, |_, _| field.from_i64(*it.next().unwrap())),
        )
        .unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn normalized_trace_form_is_diagonal(ae in prop::collection::vec(-4i64..5, 12)) {
            let a = msc_from(q(), 2, &ae);
            prop_assume!(is_generic(&a));
            let n = normalize(&a).unwrap();
            let t1 = n.normalized.trace_form(1).unwrap().mat;
            prop_assert!(t1.is_diagonal());
            prop_assert_eq!(&t1, &n.diagonal);
            prop_assert_eq!(t1.rank(), 2);
            // Idempotence once the trace form is diagonal.
            let again = normalize(&n.normalized).unwrap();
            prop_assert_eq!(again.normalized, n.normalized);
            prop_assert_eq!(again.transform, Mat::identity(q(), 2));
        }

        // Genericity is invariant under basis change.
        #[test]
        fn generic_set_is_invariant(ae in prop::collection::vec(-4i64..5, 12),
                                    ge in prop::collection::vec(-4i64..5, 4)) {
            let a = msc_from(q(), 2, &ae);
            let mut it = ge.iter();
            let g = Mat::from_fn(q(), 2, 2, |_, _| q().from_i64(*it.next().unwrap()));
            prop_assume!(g.rank() == 2);
            let b = act(&g, &a).unwrap();
            prop_assert_eq!(is_generic(&a), is_generic(&b));
        }
    }
}
