//! A growing truncation of one ring.
//!
//! The workbench owns the current host algebra and deepens it when an
//! operation needs more room. Certified ideals survive the move unchanged.

use std::sync::Arc;

use crate::algebra::ideal::IdealSubspace;
use crate::algebra::poly::Polynomial;
use crate::algebra::presentation::RingPresentation;
use crate::algebra::truncation::TruncatedLocalAlgebra;
use crate::error::{Error, Result};

#[derive(Debug)]
pub struct Workbench {
    presentation: RingPresentation,
    host: Arc<TruncatedLocalAlgebra>,
    max_order: usize,
}

impl Workbench {
    pub fn new(presentation: &RingPresentation, initial_order: usize, max_order: usize) -> Result<Self> {
        let initial = initial_order.clamp(2, max_order.max(2));
        let host = Arc::new(TruncatedLocalAlgebra::build(presentation, initial)?);
        Ok(Workbench {
            presentation: presentation.clone(),
            host,
            max_order: max_order.max(initial),
        })
    }

    pub fn host(&self) -> &Arc<TruncatedLocalAlgebra> {
        &self.host
    }

    pub fn presentation(&self) -> &RingPresentation {
        &self.presentation
    }

    pub fn max_order(&self) -> usize {
        self.max_order
    }

    /// Makes the host at least `order` deep.
    pub fn ensure_order(&mut self, order: usize) -> Result<()> {
        let current = self.host.order();
        if order <= current {
            return Ok(());
        }
        if order > self.max_order {
            return Err(Error::TruncationExhausted {
                required: order,
                ceiling: self.max_order,
            });
        }
        let target = order.max((current + current / 2).min(self.max_order));
        self.host = Arc::new(TruncatedLocalAlgebra::build(&self.presentation, target)?);
        Ok(())
    }

    /// Moves `k` onto the current host if it lives on an older one.
    pub fn refresh(&self, k: &mut IdealSubspace) -> Result<()> {
        if !Arc::ptr_eq(k.host(), &self.host) {
            *k = k.rehost(&self.host)?;
        }
        Ok(())
    }

    fn adopted(&self, k: &IdealSubspace) -> Result<IdealSubspace> {
        let mut k = k.clone();
        self.refresh(&mut k)?;
        Ok(k)
    }

    /// The ideal generated by `polys`, deepening the truncation until its
    /// colength is certified or the ceiling is reached. An ideal that is not
    /// m-primary comes back uncertified.
    pub fn ideal(&mut self, polys: &[Polynomial]) -> Result<IdealSubspace> {
        loop {
            let k = IdealSubspace::from_polynomials(&self.host, polys)?;
            if k.is_certified() || self.host.order() >= self.max_order {
                return Ok(k);
            }
            let next = (self.host.order() * 2).min(self.max_order);
            self.ensure_order(next)?;
        }
    }

    pub fn maximal(&mut self) -> IdealSubspace {
        IdealSubspace::maximal(&self.host)
    }

    pub fn unit(&mut self) -> IdealSubspace {
        IdealSubspace::unit(&self.host)
    }

    pub fn product(&mut self, a: &IdealSubspace, b: &IdealSubspace) -> Result<IdealSubspace> {
        let hint = a.product_level_hint(b).min(self.max_order);
        self.ensure_order(hint)?;
        let (a, b) = (self.adopted(a)?, self.adopted(b)?);
        match a.product(&b) {
            Err(Error::TruncationExhausted { required, .. }) if required > self.host.order() => {
                self.ensure_order(required.min(self.max_order))?;
                let (a, b) = (self.adopted(&a)?, self.adopted(&b)?);
                a.product(&b)
            }
            other => other,
        }
    }

    pub fn power(&mut self, a: &IdealSubspace, n: usize) -> Result<IdealSubspace> {
        if n == 0 {
            return Ok(self.unit());
        }
        let mut acc = a.clone();
        for _ in 1..n {
            acc = self.product(&acc, a)?;
        }
        Ok(acc)
    }

    pub fn sum(&mut self, a: &IdealSubspace, b: &IdealSubspace) -> Result<IdealSubspace> {
        let (a, b) = (self.adopted(a)?, self.adopted(b)?);
        a.sum(&b)
    }

    pub fn intersect(&mut self, a: &IdealSubspace, b: &IdealSubspace) -> Result<IdealSubspace> {
        if a.is_certified() && b.is_certified() {
            self.ensure_order(a.level().max(b.level()) + 1)?;
        }
        let (a, b) = (self.adopted(a)?, self.adopted(b)?);
        a.intersect(&b)
    }

    /// Whether `b ⊆ a`.
    pub fn contains(&mut self, a: &IdealSubspace, b: &IdealSubspace) -> Result<bool> {
        let (a, b) = (self.adopted(a)?, self.adopted(b)?);
        a.contains(&b)
    }

    pub fn equals(&mut self, a: &IdealSubspace, b: &IdealSubspace) -> Result<bool> {
        let (a, b) = (self.adopted(a)?, self.adopted(b)?);
        a.equals(&b)
    }
}
