//! Deformation retraction data and the executable identity checker.
//!
//! A retraction of a "big" space B onto a "small" space A consists of an
//! inclusion i: A → B, a projection p: B → A, and a homotopy a: B → B with
//! [d, a] = 1 − i∘p. The special retractions also satisfy a² = 0, a∘i = 0,
//! and p∘a = 0; composites of special retractions are only guaranteed the
//! first two identities, so the checker reports each identity separately.

use std::fmt::Display;

use super::linmap::LinearMap;

#[derive(Clone, Debug)]
pub struct DeformationRetraction<C: Ord + Clone> {
    /// Differential on the small space.
    pub d_small: LinearMap<C, C>,
    /// Differential on the big space.
    pub d_big: LinearMap<C, C>,
    /// Inclusion i: small → big.
    pub incl: LinearMap<C, C>,
    /// Projection p: big → small.
    pub proj: LinearMap<C, C>,
    /// Homotopy a: big → big.
    pub homotopy: LinearMap<C, C>,
}

/// Outcome of checking one identity.
#[derive(Clone, Debug)]
pub struct IdentityCheck {
    pub name: String,
    pub ok: bool,
    /// Basis element on which the identity first fails, with both sides.
    pub counterexample: Option<Counterexample>,
}

#[derive(Clone, Debug)]
pub struct Counterexample {
    pub input: String,
    pub lhs: String,
    pub rhs: String,
}

fn compare<C: Ord + Clone + Display>(
    name: &str,
    lhs: &LinearMap<C, C>,
    rhs: &LinearMap<C, C>,
) -> IdentityCheck {
    match lhs.first_difference(rhs) {
        None => IdentityCheck {
            name: name.to_string(),
            ok: true,
            counterexample: None,
        },
        Some(a) => IdentityCheck {
            name: name.to_string(),
            ok: false,
            counterexample: Some(Counterexample {
                input: a.to_string(),
                lhs: lhs.column(&a).to_string(),
                rhs: rhs.column(&a).to_string(),
            }),
        },
    }
}

impl<C: Ord + Clone + Display> DeformationRetraction<C> {
    pub fn small_basis(&self) -> &[C] {
        self.d_small.domain()
    }

    pub fn big_basis(&self) -> &[C] {
        self.d_big.domain()
    }

    /// The five retraction identities plus the two chain-map conditions,
    /// each evaluated exactly on the full basis.
    pub fn check(&self) -> Vec<IdentityCheck> {
        let id_small = LinearMap::identity(self.small_basis().to_vec());
        let id_big = LinearMap::identity(self.big_basis().to_vec());
        let ip = self.incl.compose(&self.proj);
        let da_ad = self
            .d_big
            .compose(&self.homotopy)
            .add(&self.homotopy.compose(&self.d_big));
        vec![
            compare(
                "i_chain_map",
                &self.d_big.compose(&self.incl),
                &self.incl.compose(&self.d_small),
            ),
            compare(
                "p_chain_map",
                &self.d_small.compose(&self.proj),
                &self.proj.compose(&self.d_big),
            ),
            compare("pi_eq_1", &self.proj.compose(&self.incl), &id_small),
            compare("da_plus_ad_eq_1_minus_ip", &da_ad, &id_big.sub(&ip)),
            compare(
                "aa_eq_0",
                &self.homotopy.compose(&self.homotopy),
                &LinearMap::zero(self.big_basis().to_vec(), self.big_basis().to_vec()),
            ),
            compare(
                "ai_eq_0",
                &self.homotopy.compose(&self.incl),
                &LinearMap::zero(self.small_basis().to_vec(), self.big_basis().to_vec()),
            ),
            compare(
                "pa_eq_0",
                &self.proj.compose(&self.homotopy),
                &LinearMap::zero(self.big_basis().to_vec(), self.small_basis().to_vec()),
            ),
        ]
    }

    /// True when all seven checks pass.
    pub fn is_special(&self) -> bool {
        self.check().iter().all(|c| c.ok)
    }

    /// True when the chain-map conditions and identities (1)-(2) pass; this
    /// is what composites of special retractions are guaranteed.
    pub fn is_retraction(&self) -> bool {
        self.check()
            .iter()
            .take(4)
            .all(|c| c.ok)
    }

    /// Dual retraction on cochains: transpose everything, swapping i and p.
    pub fn dualize(&self) -> DeformationRetraction<C> {
        DeformationRetraction {
            d_small: self.d_small.transpose(),
            d_big: self.d_big.transpose(),
            incl: self.proj.transpose(),
            proj: self.incl.transpose(),
            homotopy: self.homotopy.transpose(),
        }
    }

    /// The trivial retraction of a complex onto itself.
    pub fn trivial(d: LinearMap<C, C>) -> DeformationRetraction<C> {
        let basis = d.domain().to_vec();
        DeformationRetraction {
            d_small: d.clone(),
            d_big: d,
            incl: LinearMap::identity(basis.clone()),
            proj: LinearMap::identity(basis.clone()),
            homotopy: LinearMap::zero(basis.clone(), basis),
        }
    }
}

/// Composite retraction: `inner` retracts B onto A, `outer` retracts C onto
/// B; the result retracts C onto A with homotopy a_out + i_out∘a_in∘p_out.
pub fn compose_dr<C: Ord + Clone + Display>(
    outer: &DeformationRetraction<C>,
    inner: &DeformationRetraction<C>,
) -> DeformationRetraction<C> {
    assert!(
        outer.small_basis() == inner.big_basis(),
        "inner big space must match outer small space"
    );
    DeformationRetraction {
        d_small: inner.d_small.clone(),
        d_big: outer.d_big.clone(),
        incl: outer.incl.compose(&inner.incl),
        proj: inner.proj.compose(&outer.proj),
        homotopy: outer.homotopy.add(
            &outer
                .incl
                .compose(&inner.homotopy)
                .compose(&outer.proj),
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::linmap::boundary_map;
    use crate::complexes::simplex::SimplicialComplex;
    use crate::scalar::int;

    #[test]
    fn trivial_dr_passes() {
        let k = SimplicialComplex::standard(2);
        let d = boundary_map(k.basis(), |s| s.boundary_terms());
        let dr = DeformationRetraction::trivial(d);
        assert!(dr.is_special());
        assert!(dr.dualize().is_special());
    }

    #[test]
    fn compose_with_trivial_is_identity_on_maps() {
        let k = SimplicialComplex::standard(1);
        let d = boundary_map(k.basis(), |s| s.boundary_terms());
        let t = DeformationRetraction::trivial(d);
        let c = compose_dr(&t, &t);
        assert_eq!(c.incl, t.incl);
        assert_eq!(c.proj, t.proj);
        assert_eq!(c.homotopy, t.homotopy);
    }

    #[test]
    fn corrupted_homotopy_fails_with_counterexample() {
        let k = SimplicialComplex::standard(1);
        let d = boundary_map(k.basis(), |s| s.boundary_terms());
        let mut dr = DeformationRetraction::trivial(d);
        let basis = dr.big_basis().to_vec();
        let bad = basis[0].clone();
        dr.homotopy = LinearMap::from_fn(basis.clone(), basis, |s| {
            if *s == bad {
                crate::complexes::chain::FormalSum::term(s.clone(), int(1))
            } else {
                crate::complexes::chain::FormalSum::zero()
            }
        });
        let checks = dr.check();
        let failed = checks
            .iter()
            .find(|c| c.name == "da_plus_ad_eq_1_minus_ip")
            .unwrap();
        assert!(!failed.ok);
        assert!(failed.counterexample.is_some());
    }
}
