//! Finitely presented groups: words, presentations, index-2
//! Reidemeister–Schreier, Tietze simplification, Smith normal form and
//! coset enumeration.

mod coset;
mod presentation;
mod rs;
mod snf;
mod tietze;
mod word;

use thiserror::Error;

pub use coset::{todd_coxeter, CosetResult, DEFAULT_MAX_COSETS};
pub use presentation::{add_relations, Presentation};
pub use rs::{rs_double_cover, OrientationChar, TransversalData};
pub use snf::{smith_normal_form, smith_normal_form_i64, AbelianInvariants};
pub use tietze::{solve_for, tidy, tietze_simplify};
pub use word::{cyclic_canonical, cyclic_reduce, free_reduce, Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("generator {0:?} declared twice")]
    DuplicateGenerator(String),
    #[error("cannot parse {0:?}")]
    Parse(String),
    #[error("transversal letter {0:?} is not sent to -1")]
    AlphaNotReversing(String),
    #[error("word {0} is not in the kernel of the character")]
    NotInKernel(String),
}

/// Abelian invariants from the Smith normal form of the exponent-sum matrix.
pub fn abelianization(p: &Presentation) -> AbelianInvariants {
    AbelianInvariants::from_relation_matrix(&p.relation_matrix(), p.generators.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn klein_four_abelianization() {
        let p = Presentation::from_strs(&["e", "g"], &["ee", "gg", "egEG"]).unwrap();
        let a = abelianization(&p);
        assert_eq!(a.rank, 0);
        assert_eq!(a.torsion_u64(), vec![2, 2]);
    }

    #[test]
    fn free_cyclic() {
        let p = Presentation::from_strs(&["x"], &[]).unwrap();
        assert_eq!(abelianization(&p).rank, 1);
    }
}
