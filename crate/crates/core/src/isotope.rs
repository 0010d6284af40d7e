//! π-isotopes `x∗y = x∘π(y)` of left quasigroups and involutive biracks.

use crate::birack::{BirackPropertyTag, InvolutiveBirack};
use crate::error::{Error, Result};
use crate::lq::LeftQuasigroup;
use crate::perm::Permutation;

/// An isotope together with the data it was built from.
#[derive(Clone, Debug)]
pub struct IsotopeWitness {
    pub base: InvolutiveBirack,
    pub pi: Permutation,
    pub result: InvolutiveBirack,
}

/// Translation identities relating a left quasigroup, a permutation `π` and
/// properties of the `π`-isotope.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IsoCondition {
    /// `L_{L_x π(y)} = L_y`; the isotope is 2-reductive.
    Isoper1,
    /// `L_x π L_y = L_y π L_x`
    Isoper2,
    /// `L_{L_x π(z)} = L_{L_y π(z)}`; the isotope is 2-permutational.
    Isoper3,
    /// `L_{L_x π(y)} π L_x = L_x π L_y`; the isotope is left distributive.
    Isoper4,
}

fn check_degree(lq: &LeftQuasigroup, p: &Permutation) -> Result<()> {
    if p.degree() != lq.size() {
        return Err(Error::DegreeMismatch { expected: lq.size(), found: p.degree() });
    }
    Ok(())
}

/// The `π`-isotope `x∗y = x∘π(y)`.
///
/// ```
/// use ybmesh::{isotope::lq_isotope, LeftQuasigroup, Permutation};
/// let q = LeftQuasigroup::from_table(&[
///     vec![0, 1, 2, 3], vec![2, 3, 0, 1], vec![0, 1, 2, 3], vec![2, 3, 0, 1],
/// ]).unwrap();
/// let pi = Permutation::parse_cycles(4, "(0 1)(2 3)").unwrap();
/// assert_eq!(lq_isotope(&q, &pi).unwrap().row(1), &[3, 2, 1, 0]);
/// ```
pub fn lq_isotope(lq: &LeftQuasigroup, pi: &Permutation) -> Result<LeftQuasigroup> {
    check_degree(lq, pi)?;
    Ok(isotope_unchecked(lq, pi))
}

pub(crate) fn isotope_unchecked(lq: &LeftQuasigroup, pi: &Permutation) -> LeftQuasigroup {
    let n = lq.size();
    let mut mul = Vec::with_capacity(n * n);
    for x in 0..n {
        mul.extend((0..n).map(|y| lq.op(x, pi.apply(y))));
    }
    LeftQuasigroup::from_flat_unchecked(n, mul)
}

/// `ϱ(y)∘ϱ(x∘z) = ϱ(x)∘ϱ(y∘z)` for all `x, y, z`.
pub fn check_sigma(lq: &LeftQuasigroup, rho: &Permutation) -> Result<bool> {
    check_degree(lq, rho)?;
    let n = lq.size();
    let r = |x| rho.apply(x);
    for x in 0..n {
        for y in 0..n {
            let (rx, ry) = (r(x), r(y));
            for z in 0..n {
                if lq.op(ry, r(lq.op(x, z))) != lq.op(rx, r(lq.op(y, z))) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

pub fn check_iso_condition(lq: &LeftQuasigroup, pi: &Permutation, which: IsoCondition) -> Result<bool> {
    check_degree(lq, pi)?;
    let n = lq.size();
    let p = |x| pi.apply(x);
    let o = |x, y| lq.op(x, y);
    Ok(match which {
        IsoCondition::Isoper1 => (0..n).all(|x| (0..n).all(|y| lq.row(o(x, p(y))) == lq.row(y))),
        IsoCondition::Isoper2 => (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| o(x, p(o(y, z))) == o(y, p(o(x, z)))))),
        IsoCondition::Isoper3 => (0..n).all(|z| (1..n).all(|x| lq.row(o(x, p(z))) == lq.row(o(0, p(z))))),
        IsoCondition::Isoper4 => {
            (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| o(o(x, p(y)), p(o(x, z))) == o(x, p(o(y, z))))))
        }
    })
}

/// The `π`-isotope of an involutive birack, with `x⋄y = π⁻¹(x•π(y))`.
pub fn birack_isotope(b: &InvolutiveBirack, pi: &Permutation) -> Result<IsotopeWitness> {
    let circ = lq_isotope(b.circ(), pi)?;
    if let Some(w) = circ.right_cyclic_witness() {
        return Err(Error::IsotopeNotRightCyclic(w));
    }
    Ok(IsotopeWitness { base: b.clone(), pi: pi.clone(), result: InvolutiveBirack::from_cycle_set_unchecked(circ) })
}

/// The `L_e⁻¹`-isotope of a 2-permutational involutive birack, which is
/// distributive. Its `L_e`-isotope is `b` again.
///
/// ```
/// use ybmesh::{isotope::to_distributive, BirackPropertyTag, InvolutiveBirack, LeftQuasigroup};
/// let b = InvolutiveBirack::from_cycle_set(LeftQuasigroup::from_table(&[
///     vec![1, 0, 3, 2], vec![3, 2, 1, 0], vec![1, 0, 3, 2], vec![3, 2, 1, 0],
/// ]).unwrap()).unwrap();
/// let w = to_distributive(&b, 0).unwrap();
/// assert!(w.result.check(BirackPropertyTag::Distributive));
/// assert_eq!(w.result.circ().row(1), &[2, 3, 0, 1]);
/// ```
pub fn to_distributive(b: &InvolutiveBirack, e: usize) -> Result<IsotopeWitness> {
    if e >= b.size() {
        return Err(Error::InvalidArgument(format!("element {e} is outside the carrier")));
    }
    if !b.check(BirackPropertyTag::TwoPermutational) {
        return Err(Error::NotTwoPermutational);
    }
    let pi = b.circ().translation(e).inverse();
    let result = InvolutiveBirack::from_cycle_set_unchecked(isotope_unchecked(b.circ(), &pi));
    Ok(IsotopeWitness { base: b.clone(), pi, result })
}

/// For an automorphism `h` of `b`, `h` maps the `α`-isotope onto the
/// `β`-isotope whenever `α = h⁻¹βh`. Returns whether that relation holds.
pub fn isotope_isomorphism_by_automorphism(
    b: &InvolutiveBirack,
    h: &Permutation,
    alpha: &Permutation,
    beta: &Permutation,
) -> Result<bool> {
    for p in [h, alpha, beta] {
        check_degree(b.circ(), p)?;
    }
    if !b.circ().is_automorphism(h) {
        return Err(Error::NotAutomorphism);
    }
    Ok(*alpha == beta.conjugate_by(h))
}
