//! Lie algebras by structure constants, subspaces, and the Killing form.

mod algebra;
mod subspace;

pub use algebra::LieAlgebra;
pub use subspace::{AmbientRef, Subspace};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::{CycNum, SparseVec};

    fn sl2() -> LieAlgebra {
        let c = |t: &[(usize, i64)]| SparseVec::from_terms(t.iter().map(|(i, x)| (*i, CycNum::from_int(*x))).collect());
        LieAlgebra::from_brackets("sl2", vec!["e".into(), "h".into(), "f".into()], |i, j| {
            Ok(match (i, j) {
                (0, 1) => c(&[(0, -2)]),
                (0, 2) => c(&[(1, 1)]),
                (1, 2) => c(&[(2, -2)]),
                _ => unreachable!(),
            })
        })
        .unwrap()
    }

    #[test]
    fn sl2_killing_form() {
        let g = sl2();
        let k = g.killing_form();
        assert_eq!(k.get(1, 1), CycNum::from_int(8));
        assert_eq!(k.get(0, 2), CycNum::from_int(4));
        assert_eq!(k.get(0, 0), CycNum::zero());
        assert!(g.is_antisymmetric());
    }

    #[test]
    fn corrupted_constant_breaks_jacobi() {
        let g = sl2().with_corrupted_constant(0, 2, 1, CycNum::from_int(2));
        assert!(!g.verify_jacobi().is_empty());
        assert!(g.certify().is_err());
    }

    #[test]
    fn borel_is_a_subalgebra() {
        let g = sl2();
        let b = Subspace::spanned_by_basis(g.ambient(), [0, 1]);
        assert!(g.is_subalgebra(&b));
        let r = g.restrict(&b, "b").unwrap();
        assert_eq!(r.dim(), 2);
        let bad = Subspace::spanned_by_basis(g.ambient(), [0, 2]);
        assert!(!g.is_subalgebra(&bad));
        assert!(g.restrict(&bad, "x").is_err());
    }
}
