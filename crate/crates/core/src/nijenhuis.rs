//! Nijenhuis tensors of endomorphism pairs, their associated (braces-built)
//! counterparts, and the wedge-style compositions of (1,2)-tensors with
//! endomorphisms.
//!
//! For endomorphism fields `J`, `K` the Nijenhuis tensor is
//!
//! ```text
//! 2[J,K](X,Y) = (JK+KJ)[X,Y] + [JX,KY] - J[KX,Y] - J[X,KY]
//!                            + [KX,JY] - K[JX,Y] - K[X,JY]
//! ```
//!
//! and the associated Nijenhuis tensor `{J,K}` replaces every commutator by
//! the symmetric braces `{X,Y} = ∇_X Y + ∇_Y X` of the Levi-Civita
//! connection. The stored tensors are `[J,K]` and `{J,K}` themselves (the
//! defining right-hand sides halved), so the single-structure
//! specializations carry no stray factors of two.

use crate::error::Result;
use crate::report::ResidualReport;
use crate::scalar::Scalar;
use crate::tensor::{Endo, Tensor12};

/// Shared skeleton of both pair tensors: `base` is the bracket tensor for
/// the Nijenhuis case and the braces tensor for the associated case.
fn pair_from_base(base: &Tensor12, j: &Endo, k: &Endo) -> Result<Tensor12> {
    j.check_same_frame(k)?;
    base.check_frame(j.frame())?;
    let jk_plus_kj = j.compose(k)?.add(&k.compose(j)?)?;
    let mut acc = base.compose_out(&jk_plus_kj);
    acc = acc.add(&base.pullback_both(j, k));
    acc = acc.add(&base.pullback_both(k, j));
    acc = acc.sub(&base.pullback_first(k).compose_out(j));
    acc = acc.sub(&base.pullback_second(k).compose_out(j));
    acc = acc.sub(&base.pullback_first(j).compose_out(k));
    acc = acc.sub(&base.pullback_second(j).compose_out(k));
    let half = Scalar::ratio(1, 2, base.frame().backend());
    Ok(acc.scale(&half))
}

/// Nijenhuis tensor `[J, K]`; antisymmetric in its vector arguments and
/// symmetric in `J`, `K`.
pub fn nijenhuis_pair(j: &Endo, k: &Endo) -> Result<Tensor12> {
    pair_from_base(&j.frame().bracket_tensor(), j, k)
}

/// Associated Nijenhuis tensor `{J, K}`; symmetric both in its vector
/// arguments and in `J`, `K`, and vanishing whenever one argument is the
/// identity.
pub fn assoc_nijenhuis_pair(j: &Endo, k: &Endo) -> Result<Tensor12> {
    pair_from_base(&j.frame().braces_tensor(), j, k)
}

/// `(S ⋏ L)(X, Y) = S(LX, Y) + S(X, LY)`.
pub fn barwedge_right(s: &Tensor12, l: &Endo) -> Result<Tensor12> {
    s.check_frame(l.frame())?;
    Ok(s.pullback_first(l).add(&s.pullback_second(l)))
}

/// `(L ⋏ S)(X, Y) = L(S(X, Y))`.
pub fn barwedge_left(l: &Endo, s: &Tensor12) -> Result<Tensor12> {
    s.check_frame(l.frame())?;
    Ok(s.compose_out(l))
}

/// Residual of the pair-composition identity
/// `{J,KL} + {K,JL} = {J,K}⋏L + J⋏{K,L} + K⋏{J,L}`,
/// which is exactly zero for arbitrary endomorphisms.
pub fn verify_pair_composition(j: &Endo, k: &Endo, l: &Endo) -> Result<ResidualReport> {
    j.check_same_frame(k)?;
    j.check_same_frame(l)?;
    let lhs = assoc_nijenhuis_pair(j, &k.compose(l)?)?
        .add(&assoc_nijenhuis_pair(k, &j.compose(l)?)?);
    let rhs = barwedge_right(&assoc_nijenhuis_pair(j, k)?, l)?
        .add(&barwedge_left(j, &assoc_nijenhuis_pair(k, l)?)?)
        .add(&barwedge_left(k, &assoc_nijenhuis_pair(j, l)?)?);
    let diff = lhs.sub(&rhs);
    let (max_abs, argmax) = diff.max_abs_report();
    let scale = j
        .max_abs()
        .max(k.max_abs())
        .max(l.max_abs())
        .max(lhs.max_abs())
        .max(rhs.max_abs())
        .max(j.frame().max_abs());
    Ok(ResidualReport::new("pair-composition", max_abs, argmax, scale))
}
