//! The built-in algebras: the two inequivalent `Z2^2`-graded extensions of
//! `osp(1|2)` (dimensions 8 and 10), plus the `sl(2)` and `osp(1|2)`
//! subalgebras used by the affine classification proofs.
//!
//! Generator naming is ASCII: a trailing `t` marks a tilde, so `at+` is the
//! tilde partner of `a+` and `Rt` of `R`.

use crate::algebra::{AlgebraBuilder, AlgebraError, AlgebraSpec};
use crate::grade::Grade;
use crate::scalar::{qi, Q};

pub const BUILTIN_NAMES: [&str; 4] = ["g8", "g10", "osp12", "sl2"];

/// Returns the bracket table of a named builtin.
pub fn builtin(name: &str) -> Result<AlgebraSpec, AlgebraError> {
    match name {
        "g8" => Ok(g8()),
        "g10" => Ok(g10()),
        "osp12" => Ok(osp12()),
        "sl2" => Ok(sl2()),
        other => Err(AlgebraError::Other(format!(
            "unknown builtin algebra {other:?}; available: {}",
            BUILTIN_NAMES.join(", ")
        ))),
    }
}

fn rel(b: &mut AlgebraBuilder, left: &str, right: &str, result: &[(&str, i64)]) {
    let terms: Vec<(&str, Q)> = result.iter().map(|(n, c)| (*n, qi(*c))).collect();
    b.bracket(left, right, &terms).expect("builtin table entry");
}

/// The eight-dimensional `Z2^2`-graded `osp(1|2)` on the ordered basis
/// `(L+, R, L-, Rt, a+, a-, at+, at-)` with grades
/// `(0,0) x3, (1,1), (0,1) x2, (1,0) x2`.
pub fn g8() -> AlgebraSpec {
    let mut b = AlgebraBuilder::new("g8", 2);
    for (name, g) in [
        ("L+", Grade::pair(0, 0)),
        ("R", Grade::pair(0, 0)),
        ("L-", Grade::pair(0, 0)),
        ("Rt", Grade::pair(1, 1)),
        ("a+", Grade::pair(0, 1)),
        ("a-", Grade::pair(0, 1)),
        ("at+", Grade::pair(1, 0)),
        ("at-", Grade::pair(1, 0)),
    ] {
        b.generator(name, g).unwrap();
    }
    rel(&mut b, "R", "L+", &[("L+", 2)]);
    rel(&mut b, "R", "L-", &[("L-", -2)]);
    rel(&mut b, "L+", "L-", &[("R", -1)]);
    rel(&mut b, "R", "a+", &[("a+", 1)]);
    rel(&mut b, "R", "a-", &[("a-", -1)]);
    rel(&mut b, "R", "at+", &[("at+", 1)]);
    rel(&mut b, "R", "at-", &[("at-", -1)]);
    rel(&mut b, "L+", "a-", &[("a+", -1)]);
    rel(&mut b, "L-", "a+", &[("a-", 1)]);
    rel(&mut b, "Rt", "a+", &[("at+", 1)]);
    rel(&mut b, "Rt", "a-", &[("at-", -1)]);
    rel(&mut b, "Rt", "at+", &[("a+", -1)]);
    rel(&mut b, "Rt", "at-", &[("a-", 1)]);
    rel(&mut b, "a+", "a-", &[("R", 2)]);
    rel(&mut b, "a+", "at-", &[("Rt", 2)]);
    rel(&mut b, "a-", "at+", &[("Rt", 2)]);
    rel(&mut b, "at+", "at-", &[("R", 2)]);
    rel(&mut b, "L+", "at-", &[("at+", 1)]);
    rel(&mut b, "L-", "at+", &[("at-", -1)]);
    rel(&mut b, "a+", "a+", &[("L+", 4)]);
    rel(&mut b, "a-", "a-", &[("L-", 4)]);
    rel(&mut b, "at+", "at+", &[("L+", -4)]);
    rel(&mut b, "at-", "at-", &[("L-", -4)]);
    b.grading_generator("R").unwrap();
    b.build()
}

/// The ten-dimensional `Z2^2`-graded `osp(1|2)` on the ordered basis
/// `(L+, R, L-, Lt+, Rt, Lt-, a+, a-, at+, at-)`.
pub fn g10() -> AlgebraSpec {
    let mut b = AlgebraBuilder::new("g10", 2);
    for (name, g) in [
        ("L+", Grade::pair(0, 0)),
        ("R", Grade::pair(0, 0)),
        ("L-", Grade::pair(0, 0)),
        ("Lt+", Grade::pair(1, 1)),
        ("Rt", Grade::pair(1, 1)),
        ("Lt-", Grade::pair(1, 1)),
        ("a+", Grade::pair(0, 1)),
        ("a-", Grade::pair(0, 1)),
        ("at+", Grade::pair(1, 0)),
        ("at-", Grade::pair(1, 0)),
    ] {
        b.generator(name, g).unwrap();
    }
    rel(&mut b, "R", "L+", &[("L+", 2)]);
    rel(&mut b, "R", "L-", &[("L-", -2)]);
    rel(&mut b, "R", "Lt+", &[("Lt+", 2)]);
    rel(&mut b, "R", "Lt-", &[("Lt-", -2)]);
    rel(&mut b, "R", "a+", &[("a+", 1)]);
    rel(&mut b, "R", "a-", &[("a-", -1)]);
    rel(&mut b, "R", "at+", &[("at+", 1)]);
    rel(&mut b, "R", "at-", &[("at-", -1)]);
    rel(&mut b, "Rt", "L+", &[("Lt+", 2)]);
    rel(&mut b, "Rt", "L-", &[("Lt-", -2)]);
    rel(&mut b, "Rt", "Lt+", &[("L+", 2)]);
    rel(&mut b, "Rt", "Lt-", &[("L-", -2)]);
    rel(&mut b, "Rt", "a+", &[("at+", 1)]);
    rel(&mut b, "Rt", "a-", &[("at-", 1)]);
    rel(&mut b, "Rt", "at+", &[("a+", 1)]);
    rel(&mut b, "Rt", "at-", &[("a-", 1)]);
    rel(&mut b, "L+", "L-", &[("R", -1)]);
    rel(&mut b, "L+", "Lt-", &[("Rt", -1)]);
    rel(&mut b, "L-", "Lt+", &[("Rt", 1)]);
    rel(&mut b, "Lt+", "Lt-", &[("R", -1)]);
    rel(&mut b, "L+", "at-", &[("at+", 1)]);
    rel(&mut b, "L-", "at+", &[("at-", -1)]);
    rel(&mut b, "L+", "a-", &[("a+", -1)]);
    rel(&mut b, "L-", "a+", &[("a-", 1)]);
    rel(&mut b, "Lt+", "a-", &[("at+", -1)]);
    rel(&mut b, "Lt-", "a+", &[("at-", -1)]);
    rel(&mut b, "Lt+", "at-", &[("a+", 1)]);
    rel(&mut b, "Lt-", "at+", &[("a-", 1)]);
    rel(&mut b, "a+", "a-", &[("R", 2)]);
    rel(&mut b, "a+", "at-", &[("Rt", 2)]);
    rel(&mut b, "a-", "at+", &[("Rt", -2)]);
    rel(&mut b, "at+", "at-", &[("R", 2)]);
    rel(&mut b, "a+", "at+", &[("Lt+", -4)]);
    rel(&mut b, "a-", "at-", &[("Lt-", 4)]);
    rel(&mut b, "a+", "a+", &[("L+", 4)]);
    rel(&mut b, "a-", "a-", &[("L-", 4)]);
    rel(&mut b, "at+", "at+", &[("L+", -4)]);
    rel(&mut b, "at-", "at-", &[("L-", -4)]);
    b.grading_generator("R").unwrap();
    b.build()
}

/// `osp(1|2)` in the convention shared by both builtins: the bosonic sector
/// carries grade `(0,0)`, the fermions `(0,1)`. This is the subalgebra of g8
/// spanned by `R, L+, L-, a+, a-`.
pub fn osp12() -> AlgebraSpec {
    let mut b = AlgebraBuilder::new("osp12", 2);
    for (name, g) in [
        ("L+", Grade::pair(0, 0)),
        ("R", Grade::pair(0, 0)),
        ("L-", Grade::pair(0, 0)),
        ("a+", Grade::pair(0, 1)),
        ("a-", Grade::pair(0, 1)),
    ] {
        b.generator(name, g).unwrap();
    }
    rel(&mut b, "R", "L+", &[("L+", 2)]);
    rel(&mut b, "R", "L-", &[("L-", -2)]);
    rel(&mut b, "L+", "L-", &[("R", -1)]);
    rel(&mut b, "R", "a+", &[("a+", 1)]);
    rel(&mut b, "R", "a-", &[("a-", -1)]);
    rel(&mut b, "L+", "a-", &[("a+", -1)]);
    rel(&mut b, "L-", "a+", &[("a-", 1)]);
    rel(&mut b, "a+", "a-", &[("R", 2)]);
    rel(&mut b, "a+", "a+", &[("L+", 4)]);
    rel(&mut b, "a-", "a-", &[("L-", 4)]);
    b.grading_generator("R").unwrap();
    b.build()
}

/// `sl(2)` with all generators of grade `(0,0)`, in the convention
/// `[R, L+-] = +-2 L+-`, `[L+, L-] = -R` fixed by the loop-subalgebra
/// arguments of the affine classification.
pub fn sl2() -> AlgebraSpec {
    let mut b = AlgebraBuilder::new("sl2", 2);
    for name in ["L+", "R", "L-"] {
        b.generator(name, Grade::pair(0, 0)).unwrap();
    }
    rel(&mut b, "R", "L+", &[("L+", 2)]);
    rel(&mut b, "R", "L-", &[("L-", -2)]);
    rel(&mut b, "L+", "L-", &[("R", -1)]);
    b.grading_generator("R").unwrap();
    b.build()
}

/// g8 with `f^{R L+}_{L+}` changed from 2 to 3: a deliberately broken table
/// used to exercise the violation reporting paths.
pub fn g8_with_mutation() -> AlgebraSpec {
    let mut b = AlgebraBuilder::new("g8-mutated", 2);
    for (name, g) in [
        ("L+", Grade::pair(0, 0)),
        ("R", Grade::pair(0, 0)),
        ("L-", Grade::pair(0, 0)),
        ("Rt", Grade::pair(1, 1)),
        ("a+", Grade::pair(0, 1)),
        ("a-", Grade::pair(0, 1)),
        ("at+", Grade::pair(1, 0)),
        ("at-", Grade::pair(1, 0)),
    ] {
        b.generator(name, g).unwrap();
    }
    rel(&mut b, "R", "L+", &[("L+", 3)]);
    rel(&mut b, "R", "L-", &[("L-", -2)]);
    rel(&mut b, "L+", "L-", &[("R", -1)]);
    rel(&mut b, "R", "a+", &[("a+", 1)]);
    rel(&mut b, "R", "a-", &[("a-", -1)]);
    rel(&mut b, "R", "at+", &[("at+", 1)]);
    rel(&mut b, "R", "at-", &[("at-", -1)]);
    rel(&mut b, "L+", "a-", &[("a+", -1)]);
    rel(&mut b, "L-", "a+", &[("a-", 1)]);
    rel(&mut b, "Rt", "a+", &[("at+", 1)]);
    rel(&mut b, "Rt", "a-", &[("at-", -1)]);
    rel(&mut b, "Rt", "at+", &[("a+", -1)]);
    rel(&mut b, "Rt", "at-", &[("a-", 1)]);
    rel(&mut b, "a+", "a-", &[("R", 2)]);
    rel(&mut b, "a+", "at-", &[("Rt", 2)]);
    rel(&mut b, "a-", "at+", &[("Rt", 2)]);
    rel(&mut b, "at+", "at-", &[("R", 2)]);
    rel(&mut b, "L+", "at-", &[("at+", 1)]);
    rel(&mut b, "L-", "at+", &[("at-", -1)]);
    rel(&mut b, "a+", "a+", &[("L+", 4)]);
    rel(&mut b, "a-", "a-", &[("L-", 4)]);
    rel(&mut b, "at+", "at+", &[("L+", -4)]);
    rel(&mut b, "at-", "at-", &[("L-", -4)]);
    b.grading_generator("R").unwrap();
    b.build()
}

/// An abelian algebra (all brackets vanish); used by degenerate-case tests.
pub fn abelian(dim: usize) -> AlgebraSpec {
    let mut b = AlgebraBuilder::new("abelian", 2);
    for i in 0..dim {
        b.generator(&format!("x{i}"), Grade::pair(0, 0)).unwrap();
    }
    b.build()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g8_grade_census() {
        let g8 = g8();
        assert_eq!(g8.dim(), 8);
        let counts: Vec<usize> = Grade::all(2)
            .iter()
            .map(|g| g8.generators().iter().filter(|x| x.grade == *g).count())
            .collect();
        assert_eq!(counts, vec![3, 1, 2, 2]);
        assert_eq!(
            g8.generators().iter().map(|g| g.name.as_str()).collect::<Vec<_>>(),
            vec!["L+", "R", "L-", "Rt", "a+", "a-", "at+", "at-"]
        );
    }

    #[test]
    fn g10_grade_census() {
        let g10 = g10();
        assert_eq!(g10.dim(), 10);
        let counts: Vec<usize> = Grade::all(2)
            .iter()
            .map(|g| g10.generators().iter().filter(|x| x.grade == *g).count())
            .collect();
        assert_eq!(counts, vec![3, 3, 2, 2]);
        assert_eq!(
            g10.generators().iter().map(|g| g.name.as_str()).collect::<Vec<_>>(),
            vec!["L+", "R", "L-", "Lt+", "Rt", "Lt-", "a+", "a-", "at+", "at-"]
        );
    }

    #[test]
    fn sl2_convention() {
        let sl2 = sl2();
        assert_eq!(sl2.dim(), 3);
        assert_eq!(sl2.structure_constant(1, 0, 0), qi(2));
        assert_eq!(sl2.structure_constant(0, 2, 1), qi(-1));
    }

    #[test]
    fn unknown_builtin_errors() {
        assert!(builtin("g12").is_err());
    }

    #[test]
    fn grading_weights_are_diagonal() {
        let g8 = g8();
        let w = g8.grading_weights().unwrap();
        let expected: Vec<Q> = [2, 0, -2, 0, 1, -1, 1, -1].iter().map(|&x| qi(x)).collect();
        assert_eq!(w, expected);
    }
}
