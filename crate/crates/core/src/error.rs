use thiserror::Error;

use crate::parse::ParseError;

/// Which quaternionic component of a split value an error refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Component {
    Plus,
    Minus,
}

impl std::fmt::Display for Component {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Component::Plus => f.write_str("omega+"),
            Component::Minus => f.write_str("omega-"),
        }
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum Error {
    #[error("SingularElement: {component} component has modulus {modulus:e}")]
    SingularElement { component: Component, modulus: f64 },

    #[error("NotImaginaryUnit: {0}")]
    NotImaginaryUnit(String),

    #[error("NotInCone: {0}")]
    NotInCone(String),

    #[error("OutOfDomain: ({alpha}, {beta}) lies outside the stem domain")]
    OutOfDomain { alpha: f64, beta: f64 },

    #[error("RealPoint: spherical derivative is undefined on the real axis")]
    RealPoint,

    #[error("NotInvertibleAtPoint: f(x) is singular in the {0} component")]
    NotInvertibleAtPoint(Component),

    #[error("NotOrthogonal: imaginary units have inner product {0:e}")]
    NotOrthogonal(f64),

    #[error("OnSingularSphere: kernel denominator vanishes{}", component_suffix(.0))]
    OnSingularSphere(Option<Component>),

    #[error("PointOutsideContour: {component} component lies at distance {distance} from the center, radius {radius}")]
    PointOutsideContour {
        component: Component,
        distance: f64,
        radius: f64,
    },

    #[error("UnfactoredInput: {0}")]
    UnfactoredInput(String),

    #[error("NegativeRadicand: determinant radicand {0:e} is negative")]
    NegativeRadicand(f64),

    #[error("InvalidArgument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Parse(#[from] ParseError),
}

impl Error {
    /// Stable variant name, used in structured output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::SingularElement { .. } => "SingularElement",
            Error::NotImaginaryUnit(_) => "NotImaginaryUnit",
            Error::NotInCone(_) => "NotInCone",
            Error::OutOfDomain { .. } => "OutOfDomain",
            Error::RealPoint => "RealPoint",
            Error::NotInvertibleAtPoint(_) => "NotInvertibleAtPoint",
            Error::NotOrthogonal(_) => "NotOrthogonal",
            Error::OnSingularSphere(_) => "OnSingularSphere",
            Error::PointOutsideContour { .. } => "PointOutsideContour",
            Error::UnfactoredInput(_) => "UnfactoredInput",
            Error::NegativeRadicand(_) => "NegativeRadicand",
            Error::InvalidArgument(_) => "InvalidArgument",
            Error::Parse(_) => "ParseError",
        }
    }
}

fn component_suffix(c: &Option<Component>) -> String {
    c.map(|c| format!(" in the {c} component")).unwrap_or_default()
}

pub type Result<T> = std::result::Result<T, Error>;
