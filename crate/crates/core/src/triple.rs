//! Validated three-term decompositions and the tags recording how they were built.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{checked_mul, unit_sum, ArithError, Fraction, Int};

/// Construction path that produced a decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Method {
    Even,
    Mod3Is2,
    Mod3Is0,
    Mod4Is3,
    PrimeLift,
    Prime13Mod24,
    Theorem4,
    Theorem3Search,
    Oracle,
    NoDistinctSolution,
}

impl Method {
    pub const ALL: [Method; 10] = [
        Method::Even,
        Method::Mod3Is2,
        Method::Mod3Is0,
        Method::Mod4Is3,
        Method::PrimeLift,
        Method::Prime13Mod24,
        Method::Theorem4,
        Method::Theorem3Search,
        Method::Oracle,
        Method::NoDistinctSolution,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Method::Even => "Even",
            Method::Mod3Is2 => "Mod3Is2",
            Method::Mod3Is0 => "Mod3Is0",
            Method::Mod4Is3 => "Mod4Is3",
            Method::PrimeLift => "PrimeLift",
            Method::Prime13Mod24 => "Prime13Mod24",
            Method::Theorem4 => "Theorem4",
            Method::Theorem3Search => "Theorem3Search",
            Method::Oracle => "Oracle",
            Method::NoDistinctSolution => "NoDistinctSolution",
        }
    }

    /// True for the closed-form residue-class paths and prime lifting.
    pub fn is_theorem2(self) -> bool {
        matches!(
            self,
            Method::Even
                | Method::Mod3Is2
                | Method::Mod3Is0
                | Method::Mod4Is3
                | Method::PrimeLift
                | Method::Prime13Mod24
        )
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown method tag {0:?}")]
pub struct UnknownMethod(pub String);

impl FromStr for Method {
    type Err = UnknownMethod;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Method::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| UnknownMethod(s.to_owned()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error(transparent)]
    Arith(#[from] ArithError),
    /// The path's guard does not admit this input.
    #[error("{method} does not apply to n = {n}: {reason}")]
    Inapplicable {
        method: Method,
        n: u128,
        reason: &'static str,
    },
    #[error("hypothesis violated for n = {n}: {reason}")]
    HypothesisViolation { n: u128, reason: &'static str },
    #[error("{method} produced a repeated value: {xs:?}")]
    NotDistinct { method: Method, xs: [u128; 3] },
    #[error("{method} produced {xs:?}, whose unit sum {got} differs from {want}")]
    IdentityMismatch {
        method: Method,
        xs: [u128; 3],
        got: String,
        want: String,
    },
}

/// A distinct decomposition `num/den = 1/x1 + 1/x2 + 1/x3` with `x1 < x2 < x3`.
///
/// The only way to obtain one is through [`UnitTriple::validated`], so holding a
/// value is proof that the identity was checked with exact arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct UnitTriple<T> {
    xs: [T; 3],
    target: Fraction<T>,
    method: Method,
}

impl<T: Int> UnitTriple<T> {
    pub fn validated(mut xs: [T; 3], target: Fraction<T>, method: Method) -> Result<Self, ConstructError> {
        xs.sort_unstable();
        if xs[0].is_zero() {
            return Err(ArithError::Domain("unit fraction with zero denominator").into());
        }
        if xs[0] == xs[1] || xs[1] == xs[2] {
            return Err(ConstructError::NotDistinct {
                method,
                xs: xs.map(Int::wide),
            });
        }
        let got = unit_sum(&xs)?;
        if got != target {
            return Err(ConstructError::IdentityMismatch {
                method,
                xs: xs.map(Int::wide),
                got: got.to_string(),
                want: target.to_string(),
            });
        }
        Ok(UnitTriple { xs, target, method })
    }

    /// Validates against `4/n`.
    pub fn for_four_over(xs: [T; 3], n: T, method: Method) -> Result<Self, ConstructError> {
        Self::validated(xs, Fraction::new(T::lit(4), n)?, method)
    }

    pub fn xs(&self) -> [T; 3] {
        self.xs
    }

    pub fn target(&self) -> Fraction<T> {
        self.target
    }

    pub fn method(&self) -> Method {
        self.method
    }

    pub fn with_method(self, method: Method) -> Self {
        UnitTriple { method, ..self }
    }

    /// Scales every denominator by `c`, giving a decomposition of `target / c`.
    pub fn scaled(&self, c: T, method: Method) -> Result<Self, ConstructError> {
        let xs = [
            checked_mul(self.xs[0], c)?,
            checked_mul(self.xs[1], c)?,
            checked_mul(self.xs[2], c)?,
        ];
        Self::validated(xs, self.target.checked_div_int(c)?, method)
    }
}

impl<T: Int> fmt::Display for UnitTriple<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.xs;
        write!(f, "{} = 1/{a} + 1/{b} + 1/{c}", self.target)
    }
}
