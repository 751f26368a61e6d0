use alloc::format;
use alloc::rc::Rc;

use super::conditions::{check_twisting_conditions, twisted_mul};
use super::TwistingMap;
use crate::error::{Error, Result};
use crate::ncalg::{NcPoly, Tensor};
use crate::report::Report;

/// C⊗^ψA with product (c⊗a)·(c'⊗a') = c·c'^ψ ⊗ a^ψ·a'.
pub struct TwistedAlgebra {
    pub psi: Rc<TwistingMap>,
    bound: u32,
    trusted: bool,
}

impl TwistedAlgebra {
    /// Runs the condition checks at `d`; the algebra is trusted iff they all pass.
    pub fn certified(psi: Rc<TwistingMap>, d: u32) -> (Self, Report) {
        let (report, flags) = check_twisting_conditions(&psi, d);
        let trusted = flags.well_defined && flags.oeq;
        (TwistedAlgebra { psi, bound: d, trusted }, report)
    }

    /// Skips verification; products are still limited to `bound`.
    pub fn untrusted(psi: Rc<TwistingMap>, bound: u32) -> Self {
        TwistedAlgebra { psi, bound, trusted: false }
    }

    pub fn is_trusted(&self) -> bool {
        self.trusted
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn unit(&self) -> Tensor {
        Tensor::unit(2)
    }

    pub fn degree(&self, x: &Tensor) -> u32 {
        x.max_degree(&self.psi.out_space())
    }

    pub fn mul(&self, x: &Tensor, y: &Tensor) -> Result<Tensor> {
        let need = self.degree(x) + self.degree(y);
        if need > self.bound {
            return Err(Error::BoundExceeded { name: format!("{}-twisted product", self.psi.name), needed: need, bound: self.bound });
        }
        twisted_mul(&self.psi, x, y)
    }

    /// c ⊗ 1.
    pub fn from_c(&self, c: &NcPoly) -> Tensor {
        Tensor::of_polys(&[c, &NcPoly::one()])
    }

    /// 1 ⊗ a.
    pub fn from_a(&self, a: &NcPoly) -> Tensor {
        Tensor::of_polys(&[&NcPoly::one(), a])
    }

    pub fn fmt(&self, x: &Tensor) -> alloc::string::String {
        self.psi.fmt_out(x)
    }
}

/// The product of C⊗^ψA without bound bookkeeping.
pub fn twisted_product(psi: &TwistingMap, x: &Tensor, y: &Tensor) -> Result<Tensor> {
    twisted_mul(psi, x, y)
}
