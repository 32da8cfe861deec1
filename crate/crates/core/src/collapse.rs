//! Elementary collapses, expansion sequences, and the zigzag construction
//! of the stellar welding retraction.
//!
//! An elementary collapse removes a free pair (σ, σ'): σ' is a facet of σ
//! and σ is its only cofacet. Starting from Δ^n inside the cone on its
//! vertex set, a sequence of 2^n expansions builds the full (n+1)-simplex,
//! and one final collapse leaves the stellar subdivision. Conjugating the
//! composed expansion retraction through the collapse gives a cochain
//! triple per pivot vertex; averaging over pivots recovers the welding
//! retraction exactly.

use std::collections::BTreeMap;

use itertools::Itertools;

use crate::complexes::{
    compose_dr, simplicial_boundary, DeformationRetraction, FormalSum, LinearMap, Simplex,
    SimplicialComplex,
};
use crate::report::{Check, CounterexampleOut, Report};
use crate::scalar::{int, one};

/// σ' must be a facet of σ with σ its only cofacet in y. Returns the
/// coefficient of σ' in ∂σ.
fn free_pair_sign(y: &SimplicialComplex, sigma: &Simplex, sigma_p: &Simplex) -> Result<i64, String> {
    if !y.contains(sigma) || !y.contains(sigma_p) {
        return Err(format!("pair {sigma}, {sigma_p} not in the complex"));
    }
    if sigma.dim() != sigma_p.dim() + 1 || !sigma.has_face(sigma_p) {
        return Err(format!("{sigma_p} is not a facet of {sigma}"));
    }
    for cofacet in y.cofacets(sigma_p) {
        if cofacet != *sigma {
            return Err(format!(
                "{sigma_p} is not free: second cofacet {cofacet}"
            ));
        }
    }
    let sign = sigma
        .boundary_terms()
        .into_iter()
        .find(|(f, _)| f == sigma_p)
        .map(|(_, c)| c)
        .unwrap();
    Ok(sign)
}

/// Chain-level retraction of y onto y minus a free pair: the free facet is
/// pushed across σ, everything else is fixed.
pub fn elementary_collapse_chain_dr(
    y: &SimplicialComplex,
    sigma: &Simplex,
    sigma_p: &Simplex,
) -> Result<DeformationRetraction<Simplex>, String> {
    let eps = free_pair_sign(y, sigma, sigma_p)?;
    let x = y.without(&[sigma.clone(), sigma_p.clone()]);
    let big = y.basis();
    let small = x.basis();
    let incl = LinearMap::from_fn(small.clone(), big.clone(), |t| FormalSum::single(t.clone()));
    let proj = LinearMap::from_fn(big.clone(), small.clone(), |t| {
        if t == sigma {
            FormalSum::zero()
        } else if t == sigma_p {
            let mut out = FormalSum::zero();
            for (f, c) in sigma.boundary_terms() {
                if f != *sigma_p {
                    out.add_term(f, int(-eps * c));
                }
            }
            out
        } else {
            FormalSum::single(t.clone())
        }
    });
    let homotopy = LinearMap::from_fn(big.clone(), big.clone(), |t| {
        if t == sigma_p {
            FormalSum::term(sigma.clone(), int(eps))
        } else {
            FormalSum::zero()
        }
    });
    Ok(DeformationRetraction {
        d_small: simplicial_boundary(&x),
        d_big: simplicial_boundary(y),
        incl,
        proj,
        homotopy,
    })
}

/// Cochain-level retraction for the same pair, written out directly; it
/// equals the dual of the chain retraction.
pub fn elementary_collapse_cochain_dr(
    y: &SimplicialComplex,
    sigma: &Simplex,
    sigma_p: &Simplex,
) -> Result<DeformationRetraction<Simplex>, String> {
    let eps = free_pair_sign(y, sigma, sigma_p)?;
    let x = y.without(&[sigma.clone(), sigma_p.clone()]);
    let big = y.basis();
    let small = x.basis();
    let boundary_signs: BTreeMap<Simplex, i64> = sigma.boundary_terms().into_iter().collect();
    let incl = LinearMap::from_fn(small.clone(), big.clone(), |t| {
        let mut out = FormalSum::single(t.clone());
        if let Some(&c) = boundary_signs.get(t) {
            out.add_term(sigma_p.clone(), int(-eps * c));
        }
        out
    });
    let proj = LinearMap::from_fn(big.clone(), small.clone(), |t| {
        if t == sigma || t == sigma_p {
            FormalSum::zero()
        } else {
            FormalSum::single(t.clone())
        }
    });
    let homotopy = LinearMap::from_fn(big.clone(), big.clone(), |t| {
        if t == sigma {
            FormalSum::term(sigma_p.clone(), int(eps))
        } else {
            FormalSum::zero()
        }
    });
    Ok(DeformationRetraction {
        d_small: simplicial_boundary(&x).transpose(),
        d_big: simplicial_boundary(y).transpose(),
        incl,
        proj,
        homotopy,
    })
}

/// One expansion step: the added pair, with sigma_prime the free facet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpansionStep {
    pub sigma: Simplex,
    pub sigma_prime: Simplex,
}

/// The expansion sequence for pivot vertex j: adds [⋆, j] against [⋆],
/// then for each subset K of the remaining vertices, [⋆, j] ∪ K against
/// [⋆] ∪ K, in order of increasing size. 2^n steps in total, ending at
/// the full simplex on {⋆, 0, …, n}.
pub fn expansion_sequence(n: usize, j: u32) -> Vec<ExpansionStep> {
    assert!((j as usize) <= n);
    let others: Vec<u32> = (0..=n as u32).filter(|&v| v != j).collect();
    let mut steps = Vec::new();
    for p in 0..=others.len() {
        for k_set in others.iter().copied().combinations(p) {
            let mut with_j = k_set.clone();
            with_j.push(j);
            with_j.sort_unstable();
            steps.push(ExpansionStep {
                sigma: Simplex::starred(&with_j),
                sigma_prime: Simplex::starred(&k_set),
            });
        }
    }
    steps
}

/// The collapse pairs that cut the full stellar subdivision down to the
/// subdivision along the face I: each simplex spanning the starred face
/// is collapsed against its unstarred facet, top dimension first,
/// lexicographic within a dimension.
fn extra_collapse_pairs(n: usize, i_set: &[u32]) -> Vec<(Simplex, Simplex)> {
    let labels: Vec<u32> = (0..=n as u32).collect();
    let mut pairs = Vec::new();
    for size in (i_set.len()..=n).rev() {
        for j_set in labels.iter().copied().combinations(size) {
            if i_set.iter().all(|v| j_set.contains(v)) {
                pairs.push((Simplex::starred(&j_set), Simplex::from_labels(&j_set)));
            }
        }
    }
    pairs
}

/// The cochain triple for one pivot: the composed expansion retraction
/// conjugated through the collapses, from the cochains of Δ^n to those of
/// the subdivision along I.
pub fn zigzag_retraction(
    n: usize,
    i_set: &[u32],
    pivot: u32,
) -> Result<DeformationRetraction<Simplex>, String> {
    let full: Vec<u32> = (0..=n as u32).collect();
    assert!(i_set.contains(&pivot));
    let mut complex = SimplicialComplex::standard(n);
    let mut expansion = DeformationRetraction::trivial(simplicial_boundary(&complex).transpose());
    for step in expansion_sequence(n, pivot) {
        let bigger = complex.with(&[step.sigma_prime.clone(), step.sigma.clone()]);
        let dr = elementary_collapse_cochain_dr(&bigger, &step.sigma, &step.sigma_prime)?;
        expansion = compose_dr(&dr, &expansion);
        complex = bigger;
    }

    let mut collapse_pairs = vec![(Simplex::starred(&full), Simplex::from_labels(&full))];
    if i_set.len() < full.len() {
        collapse_pairs.extend(extra_collapse_pairs(n, i_set));
    }
    let mut collapses: Option<DeformationRetraction<Simplex>> = None;
    for (sigma, sigma_p) in collapse_pairs {
        let dr = elementary_collapse_cochain_dr(&complex, &sigma, &sigma_p)?;
        complex = complex.without(&[sigma, sigma_p]);
        collapses = Some(match collapses {
            None => dr,
            Some(acc) => compose_dr(&acc, &dr),
        });
    }
    let collapses = collapses.unwrap();

    // the zigzag: project the inclusion composite through the collapses,
    // include before the projection, conjugate the homotopy
    Ok(DeformationRetraction {
        d_small: expansion.d_small.clone(),
        d_big: collapses.d_small.clone(),
        incl: collapses.proj.compose(&expansion.incl),
        proj: expansion.proj.compose(&collapses.incl),
        homotopy: collapses
            .proj
            .compose(&expansion.homotopy)
            .compose(&collapses.incl),
    })
}

/// Average of the per-pivot triples over the pivots in I, with the shared
/// projection.
pub fn averaged_retraction(
    n: usize,
    i_set: &[u32],
) -> Result<DeformationRetraction<Simplex>, String> {
    let triples: Vec<_> = i_set
        .iter()
        .map(|&j| zigzag_retraction(n, i_set, j))
        .collect::<Result<_, _>>()?;
    for t in &triples[1..] {
        if t.proj.first_difference(&triples[0].proj).is_some() {
            return Err("projections disagree across pivots".to_string());
        }
    }
    let inv = one() / int(i_set.len() as i64);
    let mut incl = triples[0].incl.scale(&inv);
    let mut homotopy = triples[0].homotopy.scale(&inv);
    for t in &triples[1..] {
        incl = incl.add(&t.incl.scale(&inv));
        homotopy = homotopy.add(&t.homotopy.scale(&inv));
    }
    Ok(DeformationRetraction {
        d_small: triples[0].d_small.clone(),
        d_big: triples[0].d_big.clone(),
        incl,
        proj: triples[0].proj.clone(),
        homotopy,
    })
}

fn map_check(
    name: &str,
    kind_theorem: bool,
    lhs: &LinearMap<Simplex, Simplex>,
    rhs: &LinearMap<Simplex, Simplex>,
) -> Check {
    let (ok, cex) = match lhs.first_difference(rhs) {
        None => (true, None),
        Some(a) => (
            false,
            Some(CounterexampleOut {
                input: a.to_string(),
                lhs: lhs.column(&a).to_string(),
                rhs: rhs.column(&a).to_string(),
            }),
        ),
    };
    if kind_theorem {
        Check::theorem(name, ok, cex)
    } else {
        Check::claim(name, ok, cex)
    }
}

/// Verifies the zigzag construction against the cochain welding
/// retraction. For the full subdivision this is a proved equality; for a
/// proper face the construction and the equality are both under test as
/// claims.
pub fn verify_collapse(n: usize, i_set: &[u32]) -> Report {
    let full = i_set.len() == n + 1;
    let as_kind = |name: &str, ok: bool, cex: Option<CounterexampleOut>| {
        if full {
            Check::theorem(name, ok, cex)
        } else {
            Check::claim(name, ok, cex)
        }
    };
    let mut params = BTreeMap::new();
    params.insert("n".to_string(), n.to_string());
    params.insert(
        "I".to_string(),
        format!("{{{}}}", i_set.iter().map(|v| v.to_string()).join(",")),
    );

    let welding = crate::stellar::stellar_cochain_dr(n, i_set);
    let mut checks = Vec::new();

    let averaged = match averaged_retraction(n, i_set) {
        Ok(a) => a,
        Err(e) => {
            checks.push(as_kind(
                "construction_free_pairs",
                false,
                Some(CounterexampleOut {
                    input: e,
                    lhs: String::new(),
                    rhs: String::new(),
                }),
            ));
            return Report::new("collapse", params, checks);
        }
    };
    checks.push(as_kind("construction_free_pairs", true, None));

    for &j in i_set {
        let t = zigzag_retraction(n, i_set, j).unwrap();
        let results = t.check();
        let retraction_ok = results.iter().take(4).all(|c| c.ok);
        let cex = results
            .iter()
            .take(4)
            .find(|c| !c.ok)
            .and_then(|c| c.counterexample.as_ref())
            .map(|c| CounterexampleOut {
                input: c.input.clone(),
                lhs: c.lhs.clone(),
                rhs: c.rhs.clone(),
            });
        checks.push(as_kind(
            &format!("pivot_{j}_retraction_identities"),
            retraction_ok,
            cex,
        ));
    }

    for result in averaged.check() {
        let cex = result.counterexample.as_ref().map(|c| CounterexampleOut {
            input: c.input.clone(),
            lhs: c.lhs.clone(),
            rhs: c.rhs.clone(),
        });
        checks.push(as_kind(&format!("averaged_{}", result.name), result.ok, cex));
    }

    checks.push(map_check(
        "averaged_incl_equals_welding",
        full,
        &averaged.incl,
        &welding.incl,
    ));
    checks.push(map_check(
        "averaged_proj_equals_welding",
        full,
        &averaged.proj,
        &welding.proj,
    ));
    checks.push(map_check(
        "averaged_homotopy_equals_welding",
        full,
        &averaged.homotopy,
        &welding.homotopy,
    ));

    Report::new("collapse", params, checks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::Vertex;

    #[test]
    fn interval_collapse_values() {
        // collapse the edge of Δ^1 onto its endpoint 1
        let y = SimplicialComplex::standard(1);
        let sigma = Simplex::from_labels(&[0, 1]);
        let sigma_p = Simplex::from_labels(&[1]);
        let chain = elementary_collapse_chain_dr(&y, &sigma, &sigma_p).unwrap();
        assert_eq!(
            chain.proj.column(&sigma_p),
            FormalSum::single(Simplex::from_labels(&[0]))
        );
        assert_eq!(
            chain.homotopy.column(&sigma_p),
            FormalSum::single(sigma.clone())
        );
        assert!(chain.is_special());

        let cochain = elementary_collapse_cochain_dr(&y, &sigma, &sigma_p).unwrap();
        let e0 = Simplex::from_labels(&[0]);
        let mut expected = FormalSum::single(e0.clone());
        expected.add_term(sigma_p.clone(), int(1));
        assert_eq!(cochain.incl.column(&e0), expected);
        assert!(cochain.is_special());
    }

    #[test]
    fn homotopy_supported_on_the_pair_only() {
        let y = SimplicialComplex::standard(2);
        let sigma = Simplex::from_labels(&[0, 1, 2]);
        let sigma_p = Simplex::from_labels(&[1, 2]);
        let chain = elementary_collapse_chain_dr(&y, &sigma, &sigma_p).unwrap();
        for cell in y.basis() {
            if cell != sigma_p {
                assert!(chain.homotopy.column(&cell).is_zero(), "{cell}");
            }
        }
    }

    #[test]
    fn cochain_side_is_dual_to_chain_side() {
        let y = SimplicialComplex::standard(2);
        for (s, sp) in [
            (vec![0, 1, 2], vec![1, 2]),
            (vec![0, 1, 2], vec![0, 1]),
        ] {
            let sigma = Simplex::from_labels(&s);
            let sigma_p = Simplex::from_labels(&sp);
            let chain = elementary_collapse_chain_dr(&y, &sigma, &sigma_p).unwrap();
            let cochain = elementary_collapse_cochain_dr(&y, &sigma, &sigma_p).unwrap();
            let dual = chain.dualize();
            assert!(cochain.incl.first_difference(&dual.incl).is_none());
            assert!(cochain.proj.first_difference(&dual.proj).is_none());
            assert!(cochain.homotopy.first_difference(&dual.homotopy).is_none());
        }
    }

    #[test]
    fn non_free_pair_rejected() {
        let y = SimplicialComplex::standard(2);
        let sigma = Simplex::from_labels(&[0, 1]);
        let sigma_p = Simplex::from_labels(&[1]);
        let err = elementary_collapse_chain_dr(&y, &sigma, &sigma_p).unwrap_err();
        assert!(err.contains("not free"), "{err}");
    }

    #[test]
    fn expansion_sequence_shape() {
        // 1 edge, 2 triangles, 1 tetrahedron for n = 2
        let steps = expansion_sequence(2, 1);
        assert_eq!(steps.len(), 4);
        let dims: Vec<usize> = steps.iter().map(|s| s.sigma.dim()).collect();
        assert_eq!(dims, vec![1, 2, 2, 3]);
        assert_eq!(steps[0].sigma, Simplex::starred(&[1]));
        assert_eq!(steps[0].sigma_prime, Simplex::starred(&[]));
        assert_eq!(steps[3].sigma, Simplex::starred(&[0, 1, 2]));
    }

    #[test]
    fn interval_zigzag_values() {
        // pivot 0 gives the half-edge on the far side of the subdivision
        let t = zigzag_retraction(1, &[0, 1], 0).unwrap();
        let edge = Simplex::from_labels(&[0, 1]);
        let e0 = Simplex::from_labels(&[0]);
        let star_e1 = Simplex::starred(&[1]);
        let star_e0 = Simplex::starred(&[0]);
        let star = Simplex::starred(&[]);
        assert_eq!(t.incl.column(&edge), FormalSum::single(star_e1.clone()));
        let mut expected = FormalSum::single(e0.clone());
        expected.add_term(star.clone(), int(1));
        assert_eq!(t.incl.column(&e0), expected);
        // in the orientation with the new vertex first, the homotopy sends
        // the near half-edge dual to minus the new vertex dual
        assert_eq!(
            t.homotopy.column(&star_e0),
            FormalSum::term(star.clone(), int(-1))
        );
        assert!(t.homotopy.column(&star_e1).is_zero());
        // the projection flips the far half-edge according to orientation
        assert_eq!(t.proj.column(&star_e1), FormalSum::single(edge.clone()));
        assert_eq!(
            t.proj.column(&star_e0),
            FormalSum::term(edge.clone(), int(-1))
        );
        assert!(t.proj.column(&star).is_zero());
    }

    #[test]
    fn top_projection_signs() {
        // p̊ sends each starred n-cell dual to its signed top-cell dual
        let t = zigzag_retraction(2, &[0, 1, 2], 1).unwrap();
        let top = Simplex::from_labels(&[0, 1, 2]);
        for (l, cell) in [
            Simplex::starred(&[1, 2]),
            Simplex::starred(&[0, 2]),
            Simplex::starred(&[0, 1]),
        ]
        .iter()
        .enumerate()
        {
            assert_eq!(
                t.proj.column(cell),
                FormalSum::term(top.clone(), int(if l % 2 == 0 { 1 } else { -1 })),
                "{cell}"
            );
        }
    }

    #[test]
    fn interval_average_matches_welding() {
        let avg = averaged_retraction(1, &[0, 1]).unwrap();
        let edge = Simplex::from_labels(&[0, 1]);
        let half = crate::scalar::frac(1, 2);
        let mut expected = FormalSum::term(Simplex::starred(&[0]), -half.clone());
        expected.add_term(Simplex::starred(&[1]), half.clone());
        assert_eq!(avg.incl.column(&edge), expected);
        // both half-edge duals land on minus half the new vertex dual
        for cell in [Simplex::starred(&[0]), Simplex::starred(&[1])] {
            assert_eq!(
                avg.homotopy.column(&cell),
                FormalSum::term(Simplex::starred(&[]), -half.clone())
            );
        }
        assert!(avg.is_special());
    }

    #[test]
    fn suite_full_subdivision_n2() {
        let r = verify_collapse(2, &[0, 1, 2]);
        assert!(r.theorems_pass(), "{}", r.to_text());
        assert!(!r.claims_failed, "{}", r.to_text());
    }

    #[test]
    fn suite_edge_subdivision_claim_n2() {
        let r = verify_collapse(2, &[0, 1]);
        assert!(r.theorems_pass(), "{}", r.to_text());
        assert!(!r.claims_failed, "{}", r.to_text());
    }

    #[test]
    fn every_expansion_pair_is_free_at_its_step() {
        for pivot in 0..=2u32 {
            let mut complex = SimplicialComplex::standard(2);
            for step in expansion_sequence(2, pivot) {
                let bigger = complex.with(&[step.sigma_prime.clone(), step.sigma.clone()]);
                assert!(bigger.is_face_closed());
                assert!(free_pair_sign(&bigger, &step.sigma, &step.sigma_prime).is_ok());
                complex = bigger;
            }
            assert!(complex.contains(&Simplex::new(vec![
                Vertex::Star,
                Vertex::V(0),
                Vertex::V(1),
                Vertex::V(2)
            ])));
        }
    }
}
