use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poset::FinitePoset;
use crate::subset::SubsetBits;

/// A function between two finite posets, stored as its table of images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PosetMap {
    dom: Arc<FinitePoset>,
    cod: Arc<FinitePoset>,
    img: Vec<usize>,
}

impl PosetMap {
    pub fn new(dom: Arc<FinitePoset>, cod: Arc<FinitePoset>, img: Vec<usize>) -> Result<Self> {
        if img.len() != dom.len() {
            return Err(Error::MapShape { got: img.len(), expected: dom.len() });
        }
        if let Some(&image) = img.iter().find(|&&y| y >= cod.len()) {
            return Err(Error::MapImage { image, n: cod.len() });
        }
        Ok(PosetMap { dom, cod, img })
    }

    pub fn identity(p: Arc<FinitePoset>) -> Self {
        let img = (0..p.len()).collect();
        PosetMap { dom: p.clone(), cod: p, img }
    }

    pub fn constant(dom: Arc<FinitePoset>, cod: Arc<FinitePoset>, value: usize) -> Result<Self> {
        let img = vec![value; dom.len()];
        Self::new(dom, cod, img)
    }

    pub fn dom(&self) -> &Arc<FinitePoset> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<FinitePoset> {
        &self.cod
    }

    pub fn table(&self) -> &[usize] {
        &self.img
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.img[x]
    }

    /// `f(A)`
    pub fn image(&self, a: SubsetBits) -> SubsetBits {
        a.iter().map(|x| self.img[x]).collect()
    }

    /// `f⁻¹(B)`
    pub fn preimage(&self, b: SubsetBits) -> SubsetBits {
        (0..self.img.len()).filter(|&x| b.contains(self.img[x])).collect()
    }

    /// First pair `x <= y` with `f(x) ≰ f(y)`.
    pub fn monotonicity_violation(&self) -> Option<(usize, usize)> {
        let n = self.dom.len();
        (0..n)
            .flat_map(|y| self.dom.principal_down(y).iter().map(move |x| (x, y)))
            .find(|&(x, y)| !self.cod.le(self.img[x], self.img[y]))
    }

    pub fn is_monotone(&self) -> bool {
        self.monotonicity_violation().is_none()
    }

    pub fn ensure_monotone(&self) -> Result<()> {
        match self.monotonicity_violation() {
            Some((x, y)) => Err(Error::NotMonotone(x, y)),
            None => Ok(()),
        }
    }

    /// `g ∘ self`
    pub fn then(&self, g: &PosetMap) -> Result<PosetMap> {
        if g.dom.as_ref() != self.cod.as_ref() {
            return Err(Error::CodomainMismatch);
        }
        let img = self.img.iter().map(|&y| g.img[y]).collect();
        Ok(PosetMap { dom: self.dom.clone(), cod: g.cod.clone(), img })
    }

    /// `x <= y ⇔ f(x) <= f(y)` for all `x, y`.
    pub fn is_order_embedding(&self) -> bool {
        let n = self.dom.len();
        (0..n).all(|x| (0..n).all(|y| self.dom.le(x, y) == self.cod.le(self.img[x], self.img[y])))
    }
}
