//! Profile curves in R^4 and scalar reparametrisations, with derivative jets
//! and a finite difference self-check.

use crate::algebra::Vec4;
use crate::expr::{Expr, ParseError};
use crate::jet::Jet2;
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CurveError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("expected 4 comma separated components, found {0}")]
    WrongComponentCount(usize),
    #[error("unknown builtin curve {0:?}; available: ex1, ex2, ex3, lin14, cosh14, cosh56")]
    UnknownBuiltin(String),
    #[error("parameter {s} is outside the curve domain [{lo}, {hi}]")]
    DomainViolation { s: f64, lo: f64, hi: f64 },
    #[error("components that divide require an explicit domain that avoids the poles")]
    DomainRequired,
    #[error("components reference the shape constant c but no value was bound")]
    UnboundShape,
    #[error("shape constant for {name} must be positive, got {value}")]
    BadShape { name: String, value: f64 },
    #[error("interval endpoints must be ordered and not NaN, got [{lo}, {hi}]")]
    BadInterval { lo: f64, hi: f64 },
}

/// Closed parameter interval; infinite endpoints mean the whole line.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub const ALL: Interval = Interval {
        lo: f64::NEG_INFINITY,
        hi: f64::INFINITY,
    };

    pub fn new(lo: f64, hi: f64) -> Result<Self, CurveError> {
        if lo.is_nan() || hi.is_nan() || lo >= hi {
            return Err(CurveError::BadInterval { lo, hi });
        }
        Ok(Interval { lo, hi })
    }

    pub fn contains(&self, s: f64) -> bool {
        s >= self.lo && s <= self.hi
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// One coordinate function: a parsed expression, or a host closure that
/// returns its own jet (for callers embedding the crate).
#[derive(Clone)]
pub enum Component {
    Expr(Expr),
    Jet(Arc<dyn Fn(f64) -> Jet2 + Send + Sync>),
}

impl fmt::Debug for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Component::Expr(e) => write!(f, "Expr({e:?})"),
            Component::Jet(_) => write!(f, "Jet(<host>)"),
        }
    }
}

impl Component {
    fn eval(&self, x: Jet2, shape: f64) -> Jet2 {
        match self {
            Component::Expr(e) => e.eval(x, shape),
            Component::Jet(f) => f(x.value),
        }
    }

    fn has_division(&self) -> bool {
        match self {
            Component::Expr(e) => e.has_division(),
            Component::Jet(_) => false,
        }
    }

    fn has_param(&self) -> bool {
        match self {
            Component::Expr(e) => e.has_param(),
            Component::Jet(_) => false,
        }
    }
}

/// Curve `s -> (γ1(s), γ2(s), γ3(s), γ4(s))` with an explicit domain.
#[derive(Clone, Debug)]
pub struct Curve4 {
    pub name: String,
    /// Original component text, kept for export metadata.
    pub source: String,
    components: [Component; 4],
    pub domain: Interval,
    /// Value bound to the shape constant `c`.
    pub shape: f64,
}

const BUILTINS: &[(&str, &str)] = &[
    ("ex1", "s + sinh(s), 0, 0, s + cosh(s)"),
    ("ex2", "s*cosh(s), s*sinh(s), 0, 0"),
    ("ex3", "0, c*sin(s), 0, c*cos(s)"),
    ("lin14", "s, 0, 0, 2*s"),
    ("cosh14", "s, 0, 0, cosh(s)"),
    ("cosh56", "0, s, 0, cosh(s)"),
];

impl Curve4 {
    /// Parse four comma separated component expressions in the parameter `s`.
    ///
    /// A domain is mandatory when any component divides, since quotients make
    /// poles possible; otherwise the whole line is assumed. A shape value is
    /// mandatory when any component mentions `c`.
    pub fn parse(
        name: &str,
        source: &str,
        shape: Option<f64>,
        domain: Option<Interval>,
    ) -> Result<Self, CurveError> {
        let parts: Vec<&str> = source.split(',').collect();
        if parts.len() != 4 {
            return Err(CurveError::WrongComponentCount(parts.len()));
        }
        let mut components = Vec::with_capacity(4);
        for part in &parts {
            components.push(Component::Expr(Expr::parse(part, 's')?));
        }
        let components: [Component; 4] = components.try_into().expect("length checked");
        if components.iter().any(Component::has_param) && shape.is_none() {
            return Err(CurveError::UnboundShape);
        }
        if components.iter().any(Component::has_division) && domain.is_none() {
            return Err(CurveError::DomainRequired);
        }
        Ok(Curve4 {
            name: name.to_string(),
            source: source.to_string(),
            components,
            domain: domain.unwrap_or(Interval::ALL),
            shape: shape.unwrap_or(1.0),
        })
    }

    /// Build from host closures that supply their own jets.
    pub fn from_jets(
        name: &str,
        components: [Arc<dyn Fn(f64) -> Jet2 + Send + Sync>; 4],
        domain: Interval,
    ) -> Self {
        let [c1, c2, c3, c4] = components;
        Curve4 {
            name: name.to_string(),
            source: "<host>".to_string(),
            components: [
                Component::Jet(c1),
                Component::Jet(c2),
                Component::Jet(c3),
                Component::Jet(c4),
            ],
            domain,
            shape: 1.0,
        }
    }

    /// A named builtin curve with its default shape constant.
    pub fn builtin(name: &str) -> Result<Self, CurveError> {
        Self::builtin_with_shape(name, None)
    }

    /// A named builtin curve, optionally binding the shape constant. Only
    /// `ex3` uses it, as the radius of a circle profile, and requires it to be
    /// positive.
    pub fn builtin_with_shape(name: &str, shape: Option<f64>) -> Result<Self, CurveError> {
        let Some((_, src)) = BUILTINS.iter().find(|(n, _)| *n == name) else {
            return Err(CurveError::UnknownBuiltin(name.to_string()));
        };
        if name == "ex3" {
            if let Some(c) = shape {
                if !(c > 0.0 && c.is_finite()) {
                    return Err(CurveError::BadShape {
                        name: name.to_string(),
                        value: c,
                    });
                }
            }
        }
        let mut curve = Self::parse(name, src, shape.or(Some(1.0)), None)?;
        curve.source = src.to_string();
        Ok(curve)
    }

    pub fn builtin_names() -> impl Iterator<Item = &'static str> {
        BUILTINS.iter().map(|(n, _)| *n)
    }

    /// Value and first two derivatives of every component at `s`.
    pub fn eval_jet(&self, s: f64) -> Result<[Jet2; 4], CurveError> {
        if !self.domain.contains(s) {
            return Err(CurveError::DomainViolation {
                s,
                lo: self.domain.lo,
                hi: self.domain.hi,
            });
        }
        let x = Jet2::variable(s);
        Ok([
            self.components[0].eval(x, self.shape),
            self.components[1].eval(x, self.shape),
            self.components[2].eval(x, self.shape),
            self.components[3].eval(x, self.shape),
        ])
    }

    pub fn point(&self, s: f64) -> Result<Vec4, CurveError> {
        let j = self.eval_jet(s)?;
        Ok(Vec4([j[0].value, j[1].value, j[2].value, j[3].value]))
    }

    /// Compare jet derivatives at `s` against fourth order central
    /// differences with step `h`; returns the worst mismatch.
    ///
    /// First derivatives are checked with the five point stencil on component
    /// values. Second derivatives are checked by differencing the first
    /// derivative stream instead of the values: a raw second difference at
    /// `h = 1e-5` carries an irreducible rounding floor near `eps / h^2`,
    /// about `3e-5`, which would drown everything this check is after. The
    /// whole stencil `[s - 2h, s + 2h]` must lie inside the domain.
    pub fn fd_check(&self, s: f64, h: f64) -> Result<f64, CurveError> {
        let jm2 = self.eval_jet(s - 2.0 * h)?;
        let jm1 = self.eval_jet(s - h)?;
        let j0 = self.eval_jet(s)?;
        let jp1 = self.eval_jet(s + h)?;
        let jp2 = self.eval_jet(s + 2.0 * h)?;
        let stencil =
            |m2: f64, m1: f64, p1: f64, p2: f64| (-p2 + 8.0 * p1 - 8.0 * m1 + m2) / (12.0 * h);
        let mut worst = 0.0f64;
        for i in 0..4 {
            let d1_fd = stencil(jm2[i].value, jm1[i].value, jp1[i].value, jp2[i].value);
            let d2_fd = stencil(jm2[i].d1, jm1[i].d1, jp1[i].d1, jp2[i].d1);
            worst = worst
                .max((d1_fd - j0[i].d1).abs())
                .max((d2_fd - j0[i].d2).abs());
        }
        Ok(worst)
    }
}

/// Scalar map `t -> f(t) + offset`, used for the two subgroup parameters of a
/// surface patch.
///
/// The additive offset exists so a patch can be slid inside its symmetry
/// group (an ambient isometry) without touching the parsed expression.
#[derive(Clone, Debug)]
pub struct ScalarMap {
    /// Original text, kept for export metadata.
    pub source: String,
    component: Component,
    shape: f64,
    pub offset: f64,
}

impl ScalarMap {
    /// Parse an expression in the parameter `t`.
    pub fn parse(source: &str, shape: Option<f64>) -> Result<Self, CurveError> {
        let expr = Expr::parse(source, 't')?;
        if expr.has_param() && shape.is_none() {
            return Err(CurveError::UnboundShape);
        }
        Ok(ScalarMap {
            source: source.to_string(),
            component: Component::Expr(expr),
            shape: shape.unwrap_or(1.0),
            offset: 0.0,
        })
    }

    /// The identity map `t`.
    pub fn identity() -> Self {
        Self::parse("t", None).expect("identity expression parses")
    }

    pub fn from_jet(f: Arc<dyn Fn(f64) -> Jet2 + Send + Sync>) -> Self {
        ScalarMap {
            source: "<host>".to_string(),
            component: Component::Jet(f),
            shape: 1.0,
            offset: 0.0,
        }
    }

    /// The same map slid by a constant.
    pub fn shifted(&self, delta: f64) -> Self {
        let mut out = self.clone();
        out.offset += delta;
        out
    }

    pub fn eval_jet(&self, t: f64) -> Jet2 {
        self.component.eval(Jet2::variable(t), self.shape) + self.offset
    }

    pub fn describe(&self) -> String {
        if self.offset == 0.0 {
            self.source.clone()
        } else {
            format!("({}) + {}", self.source, self.offset)
        }
    }
}
