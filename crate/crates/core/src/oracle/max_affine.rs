use serde::{Deserialize, Serialize};

use super::{non_finite, Objective};
use crate::error::Result;
use crate::geometry::Point2;
use crate::scalar::Scalar;

/// `slope . x + offset`
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AffinePiece<T> {
    pub slope: Point2<T>,
    pub offset: T,
}

impl<T: Scalar> AffinePiece<T> {
    pub fn new(s1: T, s2: T, offset: T) -> Self {
        AffinePiece {
            slope: Point2::new(s1, s2),
            offset,
        }
    }

    #[inline]
    pub fn eval(&self, x: Point2<T>) -> T {
        self.slope.dot(x) + self.offset
    }
}

/// Which active piece supplies the subgradient. A piece is active when its
/// value is within `tol` of the maximum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "rule")]
pub enum SubgradientSelection<T> {
    FirstActive { tol: T },
    LastActive { tol: T },
}

impl<T: Scalar> Default for SubgradientSelection<T> {
    fn default() -> Self {
        SubgradientSelection::FirstActive { tol: T::zero() }
    }
}

/// Pointwise maximum of affine pieces, with a gradient of an active piece as
/// the subgradient.
#[derive(Debug, Clone)]
pub struct MaxAffine<T> {
    pieces: Vec<AffinePiece<T>>,
    selection: SubgradientSelection<T>,
    lipschitz: T,
}

impl<T: Scalar> MaxAffine<T> {
    /// Panics on an empty piece list.
    pub fn new(pieces: Vec<AffinePiece<T>>, selection: SubgradientSelection<T>) -> Self {
        assert!(!pieces.is_empty(), "max of no pieces");
        let lipschitz = pieces
            .iter()
            .map(|p| p.slope.norm())
            .fold(T::zero(), T::max);
        MaxAffine {
            pieces,
            selection,
            lipschitz,
        }
    }

    pub fn pieces(&self) -> &[AffinePiece<T>] {
        &self.pieces
    }

    pub fn with_selection(mut self, selection: SubgradientSelection<T>) -> Self {
        self.selection = selection;
        self
    }

    fn max_value(&self, x: Point2<T>) -> T {
        self.pieces
            .iter()
            .map(|p| p.eval(x))
            .fold(T::neg_infinity(), T::max)
    }
}

impl<T: Scalar> Objective<T> for MaxAffine<T> {
    fn value(&self, x: Point2<T>) -> Result<T> {
        let v = self.max_value(x);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(non_finite("value", x))
        }
    }

    fn gradient(&self, x: Point2<T>) -> Result<Point2<T>> {
        let m = self.max_value(x);
        if !m.is_finite() {
            return Err(non_finite("value", x));
        }
        let active = |tol: T| {
            let floor = m - tol;
            move |p: &&AffinePiece<T>| p.eval(x) >= floor
        };
        let piece = match self.selection {
            SubgradientSelection::FirstActive { tol } => self.pieces.iter().find(active(tol)),
            SubgradientSelection::LastActive { tol } => self.pieces.iter().rev().find(active(tol)),
        };
        // the maximizer itself is always active
        Ok(piece.expect("some piece attains the max").slope)
    }

    fn lipschitz(&self) -> T {
        self.lipschitz
    }

    fn grad_lipschitz(&self) -> Option<T> {
        None
    }
}
