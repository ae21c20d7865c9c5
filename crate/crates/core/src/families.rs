//! Named operator families and their coefficient tensors.

use alloc::format;
use alloc::string::String;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};
use crate::permutation::Permutation;
use crate::simplex::SimplexPoint;
use crate::tensor::{convex_combine, CoefficientTensor};

/// Every operator family known to the library.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    V0,
    V1,
    V2,
    V3,
    V4,
    V5,
    V6,
    V7,
    Zakharevich,
    Khukr,
    VallanderTheta,
    GanikhodjaevLambda,
    VallanderSpiral,
    GsnAlpha,
    GsnBeta,
    JjphTheta,
    Regular,
    QuasiStrict,
    AlphaCombination,
}

/// Registry entry describing how a family is parameterized.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FamilyInfo {
    pub family: Family,
    pub name: &'static str,
    /// `Some(3)` for operators on the 2-simplex, `None` when `m` is free.
    pub fixed_m: Option<usize>,
    pub min_m: usize,
    /// Name of the scalar parameter, if any.
    pub parameter: Option<&'static str>,
    pub needs_permutation: bool,
    pub formula: &'static str,
}

const fn s2(family: Family, name: &'static str, parameter: Option<&'static str>, formula: &'static str) -> FamilyInfo {
    FamilyInfo { family, name, fixed_m: Some(3), min_m: 3, parameter, needs_permutation: false, formula }
}

const REGISTRY: [FamilyInfo; 19] = [
    s2(Family::V0, "V0", None, "(x1^2+2x2x3, x2^2+2x1x3, x3^2+2x1x2)"),
    s2(Family::V1, "V1", None, "(x1^2+2x1x2, x2^2+2x1x3, x3^2+2x2x3)"),
    s2(Family::V2, "V2", None, "(x1^2+2x1x2, x2^2+2x2x3, x3^2+2x1x3)"),
    s2(Family::V3, "V3", None, "(x1^2+2x1x3, x2^2+2x1x2, x3^2+2x2x3)"),
    s2(Family::V4, "V4", None, "(x2^2+2x1x2, x3^2+2x2x3, x1^2+2x1x3)"),
    s2(Family::V5, "V5", None, "(x3^2+2x1x2, x1^2+2x2x3, x2^2+2x1x3)"),
    s2(Family::V6, "V6", None, "(x3^2+2x2x3, x1^2+2x1x3, x2^2+2x1x2)"),
    s2(Family::V7, "V7", None, "(x2^2+2x2x3, x3^2+2x1x3, x1^2+2x1x2)"),
    s2(Family::Zakharevich, "ZAKHAREVICH", None, "(x1^2+2x1x2, x2^2+2x2x3, x3^2+2x1x3)"),
    s2(Family::Khukr, "KHUKR", None, "(x1^2+(x2+x3)^2, 2x1x3, 2x1x2)"),
    s2(Family::VallanderTheta, "VALLANDER_THETA", Some("theta"), "theta*V1 + (1-theta)*V0"),
    s2(Family::GanikhodjaevLambda, "GANIKHODJAEV_LAMBDA", Some("lambda"), "lambda*V0 + (1-lambda)*V2"),
    s2(Family::VallanderSpiral, "VALLANDER_SPIRAL", Some("lambda"), "lambda*V2 + (1-lambda)*V3"),
    s2(Family::GsnAlpha, "GSN_ALPHA", Some("alpha"), "(1-alpha)*V2 + alpha*V4"),
    s2(Family::GsnBeta, "GSN_BETA", Some("beta"), "(1-beta)*V2 + beta*V5"),
    s2(Family::JjphTheta, "JJPH_THETA", Some("theta"), "theta*V6 + (1-theta)*V7"),
    FamilyInfo {
        family: Family::Regular,
        name: "REGULAR",
        fixed_m: None,
        min_m: 3,
        parameter: None,
        needs_permutation: false,
        formula: "x'_k = x_k^2 + 2/(m-2) * sum_{i<j; i,j!=k} x_i x_j",
    },
    FamilyInfo {
        family: Family::QuasiStrict,
        name: "QUASI_STRICT",
        fixed_m: None,
        min_m: 3,
        parameter: None,
        needs_permutation: true,
        formula: "x'_k = 2 x_m x_pi(k) (k<m), x'_m = x_m^2 + (1-x_m)^2",
    },
    FamilyInfo {
        family: Family::AlphaCombination,
        name: "ALPHA_COMBINATION",
        fixed_m: None,
        min_m: 3,
        parameter: Some("alpha"),
        needs_permutation: true,
        formula: "alpha*REGULAR + (1-alpha)*QUASI_STRICT",
    },
];

impl Family {
    pub const ALL: [Family; 19] = [
        Family::V0,
        Family::V1,
        Family::V2,
        Family::V3,
        Family::V4,
        Family::V5,
        Family::V6,
        Family::V7,
        Family::Zakharevich,
        Family::Khukr,
        Family::VallanderTheta,
        Family::GanikhodjaevLambda,
        Family::VallanderSpiral,
        Family::GsnAlpha,
        Family::GsnBeta,
        Family::JjphTheta,
        Family::Regular,
        Family::QuasiStrict,
        Family::AlphaCombination,
    ];

    pub fn info(self) -> &'static FamilyInfo {
        REGISTRY.iter().find(|e| e.family == self).expect("every family is registered")
    }

    /// Stable name used in file formats and on the command line.
    pub fn name(self) -> &'static str {
        self.info().name
    }

    pub fn is_s2(self) -> bool {
        self.info().fixed_m == Some(3)
    }

    pub fn registry() -> &'static [FamilyInfo] {
        &REGISTRY
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        REGISTRY
            .iter()
            .find(|e| e.name.eq_ignore_ascii_case(s.trim()))
            .map(|e| e.family)
            .ok_or_else(|| Error::UnknownFamily(String::from(s)))
    }
}

/// A fully resolved family choice.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilySpec {
    pub family: Family,
    pub m: usize,
    pub permutation: Option<Permutation>,
    pub parameter: Option<f64>,
}

impl FamilySpec {
    /// Validates a family choice. `m` may be omitted for operators on the 2-simplex.
    pub fn new(family: Family, m: Option<usize>, permutation: Option<Permutation>, parameter: Option<f64>) -> Result<Self> {
        let info = family.info();
        let m = match (info.fixed_m, m) {
            (Some(fixed), None) => fixed,
            (Some(fixed), Some(m)) if m != fixed => {
                return Err(Error::DimensionMismatch { expected: fixed, found: m });
            }
            (_, Some(m)) => m,
            (None, None) => return Err(Error::InvalidArgument("this family needs an explicit m")),
        };
        if m < info.min_m {
            return Err(Error::DimensionTooSmall { m, min: info.min_m });
        }
        match (info.parameter, parameter) {
            (Some(_), None) => return Err(Error::MissingParameter { family: info.name }),
            (None, Some(_)) => return Err(Error::UnexpectedParameter { family: info.name }),
            (Some(_), Some(w)) if !(0.0..=1.0).contains(&w) => return Err(Error::WeightOutOfRange(w)),
            _ => {}
        }
        match (&permutation, info.needs_permutation) {
            (None, true) => return Err(Error::MissingPermutation { family: info.name }),
            (Some(_), false) => return Err(Error::UnexpectedPermutation { family: info.name }),
            (Some(p), true) if p.len() != m - 1 => {
                return Err(Error::PermutationSizeMismatch { expected: m - 1, found: p.len() });
            }
            _ => {}
        }
        Ok(Self { family, m, permutation, parameter })
    }

    pub fn regular(m: usize) -> Result<Self> {
        Self::new(Family::Regular, Some(m), None, None)
    }

    pub fn quasi_strict(m: usize, pi: Permutation) -> Result<Self> {
        Self::new(Family::QuasiStrict, Some(m), Some(pi), None)
    }

    pub fn alpha_combination(m: usize, pi: Permutation, alpha: f64) -> Result<Self> {
        Self::new(Family::AlphaCombination, Some(m), Some(pi), Some(alpha))
    }

    pub fn s2(family: Family, parameter: Option<f64>) -> Result<Self> {
        Self::new(family, Some(3), None, parameter)
    }

    pub fn build(&self) -> Result<CoefficientTensor> {
        match self.family {
            Family::Regular => make_regular(self.m),
            Family::QuasiStrict => make_quasi_strict(self.m, self.perm()),
            Family::AlphaCombination => {
                make_alpha_combination(self.m, self.perm(), self.parameter.expect("validated"))
            }
            family => make_s2(family, self.parameter),
        }
    }

    fn perm(&self) -> &Permutation {
        self.permutation.as_ref().expect("validated")
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(m={}", self.family, self.m)?;
        if let Some(p) = &self.permutation {
            write!(f, ", pi={p}")?;
        }
        if let (Some(name), Some(w)) = (self.family.info().parameter, self.parameter) {
            write!(f, ", {name}={w}")?;
        }
        f.write_str(")")
    }
}

/// A tensor together with the family it was built from, if any.
#[derive(Debug, Clone, PartialEq)]
pub struct Operator {
    pub spec: Option<FamilySpec>,
    pub tensor: CoefficientTensor,
}

impl Operator {
    pub fn from_spec(spec: FamilySpec) -> Result<Self> {
        let tensor = spec.build()?;
        Ok(Self { spec: Some(spec), tensor })
    }

    /// Wraps a user-supplied tensor with no family metadata.
    pub fn custom(tensor: CoefficientTensor) -> Self {
        Self { spec: None, tensor }
    }

    pub fn dim(&self) -> usize {
        self.tensor.dim()
    }

    pub fn family(&self) -> Option<Family> {
        self.spec.as_ref().map(|s| s.family)
    }

    pub fn apply(&self, x: &SimplexPoint) -> Result<SimplexPoint> {
        self.tensor.apply(x)
    }

    pub fn label(&self) -> String {
        match &self.spec {
            Some(spec) => format!("{spec}"),
            None => format!("CUSTOM(m={})", self.dim()),
        }
    }
}

/// `x'_k = x_k² + (2/(m−2)) Σ_{i<j, i,j≠k} x_i x_j`.
pub fn make_regular(m: usize) -> Result<CoefficientTensor> {
    if m < 3 {
        return Err(Error::DimensionTooSmall { m, min: 3 });
    }
    let share = 1.0 / (m - 2) as f64;
    CoefficientTensor::from_fn(m, |i, j, k| {
        if i == j {
            if k == i {
                1.0
            } else {
                0.0
            }
        } else if k != i && k != j {
            share
        } else {
            0.0
        }
    })
}

/// `x'_k = 2 x_m x_{π(k)}` for `k < m` and `x'_m = x_m² + (x_1 + ⋯ + x_{m−1})²`,
/// with `π` a permutation of `{1, ..., m−1}`.
pub fn make_quasi_strict(m: usize, pi: &Permutation) -> Result<CoefficientTensor> {
    if m < 3 {
        return Err(Error::DimensionTooSmall { m, min: 3 });
    }
    if pi.len() != m - 1 {
        return Err(Error::PermutationSizeMismatch { expected: m - 1, found: pi.len() });
    }
    let last = m - 1;
    CoefficientTensor::from_fn(m, |i, j, k| {
        if j == last {
            if i == last {
                return if k == last { 1.0 } else { 0.0 };
            }
            // pair (i, m): the unique k < m with π(k) = i
            return if k < last && pi.image0(k) == i { 1.0 } else { 0.0 };
        }
        if k == last {
            1.0
        } else {
            0.0
        }
    })
}

/// `α · make_regular(m) + (1 − α) · make_quasi_strict(m, π)`.
pub fn make_alpha_combination(m: usize, pi: &Permutation, alpha: f64) -> Result<CoefficientTensor> {
    convex_combine(&make_regular(m)?, &make_quasi_strict(m, pi)?, alpha)
}

// Each basic operator on the 2-simplex has the form x'_k = x_a² + 2 x_b x_c.
// Rows list (a, (b, c)) for k = 1, 2, 3.
type Basic = [(usize, (usize, usize)); 3];

const BASIC_V0: Basic = [(1, (2, 3)), (2, (1, 3)), (3, (1, 2))];
const BASIC_V1: Basic = [(1, (1, 2)), (2, (1, 3)), (3, (2, 3))];
const BASIC_V2: Basic = [(1, (1, 2)), (2, (2, 3)), (3, (1, 3))];
const BASIC_V3: Basic = [(1, (1, 3)), (2, (1, 2)), (3, (2, 3))];
const BASIC_V4: Basic = [(2, (1, 2)), (3, (2, 3)), (1, (1, 3))];
const BASIC_V5: Basic = [(3, (1, 2)), (1, (2, 3)), (2, (1, 3))];
const BASIC_V6: Basic = [(3, (2, 3)), (1, (1, 3)), (2, (1, 2))];
const BASIC_V7: Basic = [(2, (2, 3)), (3, (1, 3)), (1, (1, 2))];

fn basic(table: &Basic) -> CoefficientTensor {
    let mut entries = [(0, 0, 0, 0.0); 6];
    for (k, &(a, (b, c))) in table.iter().enumerate() {
        entries[2 * k] = (a, a, k + 1, 1.0);
        entries[2 * k + 1] = (b, c, k + 1, 1.0);
    }
    CoefficientTensor::from_entries(3, &entries).expect("basic tables are stochastic")
}

fn khukr() -> CoefficientTensor {
    CoefficientTensor::from_entries(
        3,
        &[(1, 1, 1, 1.0), (2, 2, 1, 1.0), (3, 3, 1, 1.0), (2, 3, 1, 1.0), (1, 3, 2, 1.0), (1, 2, 3, 1.0)],
    )
    .expect("Khukr table is stochastic")
}

/// Builds an operator on the 2-simplex. Combination families need a parameter in `[0, 1]`.
pub fn make_s2(family: Family, parameter: Option<f64>) -> Result<CoefficientTensor> {
    let info = family.info();
    if !family.is_s2() {
        return Err(Error::UnknownFamily(format!("{} is not an operator on the 2-simplex", info.name)));
    }
    let param = match (info.parameter, parameter) {
        (Some(_), None) => return Err(Error::MissingParameter { family: info.name }),
        (None, Some(_)) => return Err(Error::UnexpectedParameter { family: info.name }),
        (_, p) => p,
    };
    let w = || param.expect("checked above");
    match family {
        Family::V0 => Ok(basic(&BASIC_V0)),
        Family::V1 => Ok(basic(&BASIC_V1)),
        Family::V2 | Family::Zakharevich => Ok(basic(&BASIC_V2)),
        Family::V3 => Ok(basic(&BASIC_V3)),
        Family::V4 => Ok(basic(&BASIC_V4)),
        Family::V5 => Ok(basic(&BASIC_V5)),
        Family::V6 => Ok(basic(&BASIC_V6)),
        Family::V7 => Ok(basic(&BASIC_V7)),
        Family::Khukr => Ok(khukr()),
        Family::VallanderTheta => convex_combine(&basic(&BASIC_V1), &basic(&BASIC_V0), w()),
        Family::GanikhodjaevLambda => convex_combine(&basic(&BASIC_V0), &basic(&BASIC_V2), w()),
        Family::VallanderSpiral => convex_combine(&basic(&BASIC_V2), &basic(&BASIC_V3), w()),
        Family::GsnAlpha => convex_combine(&basic(&BASIC_V4), &basic(&BASIC_V2), w()),
        Family::GsnBeta => convex_combine(&basic(&BASIC_V5), &basic(&BASIC_V2), w()),
        Family::JjphTheta => convex_combine(&basic(&BASIC_V6), &basic(&BASIC_V7), w()),
        Family::Regular | Family::QuasiStrict | Family::AlphaCombination => unreachable!(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permutation::parse_cycles;

    fn pt(c: &[f64]) -> SimplexPoint {
        SimplexPoint::new(c).unwrap()
    }

    #[test]
    fn names_round_trip() {
        for f in Family::ALL {
            assert_eq!(f.name().parse::<Family>().unwrap(), f);
        }
        assert!(matches!("BOGUS".parse::<Family>(), Err(Error::UnknownFamily(_))));
        assert_eq!(Family::registry().len(), Family::ALL.len());
    }

    #[test]
    fn regular_three_is_v0() {
        assert_eq!(make_regular(3).unwrap(), make_s2(Family::V0, None).unwrap());
        assert_eq!(make_regular(2), Err(Error::DimensionTooSmall { m: 2, min: 3 }));
    }

    #[test]
    fn regular_fixes_vertices_and_center() {
        let t = make_regular(4).unwrap();
        let e1 = SimplexPoint::vertex(4, 1).unwrap();
        assert_eq!(t.apply(&e1).unwrap(), e1);
        let t5 = make_regular(5).unwrap();
        let c = SimplexPoint::center(5).unwrap();
        assert!(t5.apply(&c).unwrap().sup_distance(&c) < 1e-16);
        assert!(!t.is_volterra());
    }

    #[test]
    fn quasi_strict_swaps_and_squashes() {
        let pi = parse_cycles("(1 2)", 2).unwrap();
        let t = make_quasi_strict(3, &pi).unwrap();
        let y = t.apply(&pt(&[0.3, 0.2, 0.5])).unwrap();
        assert!(y.sup_distance(&pt(&[0.2, 0.3, 0.5])) < 1e-16);
        let y = t.apply(&pt(&[0.6, 0.4, 0.0])).unwrap();
        assert_eq!(y, SimplexPoint::vertex(3, 3).unwrap());
        assert!(!t.is_volterra());
        let wrong = parse_cycles("(1 2)", 3).unwrap();
        assert_eq!(
            make_quasi_strict(3, &wrong),
            Err(Error::PermutationSizeMismatch { expected: 2, found: 3 })
        );
    }

    #[test]
    fn quasi_strict_last_coordinate_is_f() {
        let pi = parse_cycles("(1 3)(2 4)", 4).unwrap();
        let t = make_quasi_strict(5, &pi).unwrap();
        let x = pt(&[0.1, 0.2, 0.05, 0.25, 0.4]);
        let y = t.apply(&x).unwrap();
        assert!((y.last() - (2.0 * 0.16 - 0.8 + 1.0)).abs() < 1e-15);
        assert!((y.coords()[0] - 2.0 * 0.4 * 0.05).abs() < 1e-15);
    }

    #[test]
    fn alpha_combination_endpoints_and_fixed_point() {
        let pi = parse_cycles("(1 2)", 2).unwrap();
        assert_eq!(make_alpha_combination(3, &pi, 1.0).unwrap(), make_regular(3).unwrap());
        assert_eq!(make_alpha_combination(3, &pi, 0.0).unwrap(), make_quasi_strict(3, &pi).unwrap());
        let t = make_alpha_combination(3, &pi, 0.5).unwrap();
        let x = pt(&[2.0 / 7.0, 2.0 / 7.0, 3.0 / 7.0]);
        assert!(t.apply(&x).unwrap().sup_distance(&x) < 1e-15);
    }

    #[test]
    fn s2_catalog() {
        let z = make_s2(Family::Zakharevich, None).unwrap();
        assert!(z.is_volterra());
        let k = make_s2(Family::Khukr, None).unwrap();
        let x = pt(&[0.5, 0.25, 0.25]);
        assert!(k.apply(&x).unwrap().sup_distance(&x) < 1e-16);
        assert_eq!(make_s2(Family::VallanderTheta, None), Err(Error::MissingParameter { family: "VALLANDER_THETA" }));
        assert_eq!(make_s2(Family::V3, Some(0.2)), Err(Error::UnexpectedParameter { family: "V3" }));
        assert!(matches!(make_s2(Family::Regular, None), Err(Error::UnknownFamily(_))));
    }

    #[test]
    fn vallander_half_matches_hand_built() {
        let t = make_s2(Family::VallanderTheta, Some(0.5)).unwrap();
        // (x1²+x1x2+x2x3, x2²+2x1x3, x3²+x2x3+x1x2)
        let hand = CoefficientTensor::from_entries(
            3,
            &[
                (1, 1, 1, 1.0),
                (1, 2, 1, 0.5),
                (2, 3, 1, 0.5),
                (2, 2, 2, 1.0),
                (1, 3, 2, 1.0),
                (3, 3, 3, 1.0),
                (2, 3, 3, 0.5),
                (1, 2, 3, 0.5),
            ],
        )
        .unwrap();
        assert_eq!(t, hand);
    }

    #[test]
    fn spiral_half_is_identity() {
        let t = make_s2(Family::VallanderSpiral, Some(0.5)).unwrap();
        let x = pt(&[0.2, 0.5, 0.3]);
        assert!(t.apply(&x).unwrap().sup_distance(&x) < 1e-15);
    }

    #[test]
    fn spec_validation() {
        let pi = parse_cycles("(1 2)", 2).unwrap();
        assert_eq!(
            FamilySpec::new(Family::V0, Some(4), None, None),
            Err(Error::DimensionMismatch { expected: 3, found: 4 })
        );
        assert!(matches!(
            FamilySpec::new(Family::QuasiStrict, Some(3), None, None),
            Err(Error::MissingPermutation { .. })
        ));
        assert!(matches!(
            FamilySpec::new(Family::Regular, Some(3), Some(pi.clone()), None),
            Err(Error::UnexpectedPermutation { .. })
        ));
        assert!(matches!(
            FamilySpec::new(Family::AlphaCombination, Some(3), Some(pi.clone()), Some(1.5)),
            Err(Error::WeightOutOfRange(_))
        ));
        let spec = FamilySpec::alpha_combination(3, pi, 0.5).unwrap();
        assert_eq!(alloc::format!("{spec}"), "ALPHA_COMBINATION(m=3, pi=(1 2), alpha=0.5)");
        assert_eq!(FamilySpec::s2(Family::Khukr, None).unwrap().m, 3);
    }
}
