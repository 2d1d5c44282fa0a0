//! Finite-group fixtures and the difference structures they induce.
//!
//! Every group is stored as a dense Cayley table over indices
//! `0..order-1`, which gives O(1) products and a canonical element order
//! for free. [`group_delta`] turns a group into the difference structure
//! `Δ(a,b) = a⁻¹·b`, which satisfies both axioms exactly; [`relabeled_delta`]
//! composes `Δ` with a permutation of the carrier, producing a structure
//! that only satisfies the weak axioms (plain axiom 1 generally fails for a
//! non-identity relabeling, which is exactly what the fixture is for).

use std::collections::HashMap;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::delta::{DeltaStructure, Element};

/// Largest group order the catalog will materialize (the Cayley table is
/// order² entries).
pub const MAX_ORDER: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("invalid parameter for {family}: {reason}")]
    InvalidParameter {
        family: &'static str,
        reason: String,
    },
    #[error("relabeling permutation is not a bijection on the carrier")]
    NotABijection,
    #[error("group law `{law}` fails at witness {witness:?}")]
    LawViolation {
        law: &'static str,
        witness: [u32; 3],
    },
}

/// A finite group with precomputed multiplication and inverse tables.
///
/// Cloning is cheap (the tables are shared).
#[derive(Debug, Clone)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    identity: u32,
    op: Arc<Vec<u32>>,
    inverse: Arc<Vec<u32>>,
}

impl FiniteGroup {
    fn from_tables(name: String, order: usize, identity: u32, op: Vec<u32>, inverse: Vec<u32>) -> Self {
        debug_assert_eq!(op.len(), order * order);
        debug_assert_eq!(inverse.len(), order);
        FiniteGroup {
            name,
            order,
            identity,
            op: Arc::new(op),
            inverse: Arc::new(inverse),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> u32 {
        self.identity
    }

    /// The product `a · b`.
    pub fn op(&self, a: u32, b: u32) -> u32 {
        self.op[a as usize * self.order + b as usize]
    }

    pub fn inverse_of(&self, a: u32) -> u32 {
        self.inverse[a as usize]
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        (0..self.order as u32).map(Element)
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order as u32;
        (0..n).all(|a| (0..n).all(|b| self.op(a, b) == self.op(b, a)))
    }

    /// Exhaustively verifies associativity and the identity/inverse laws.
    ///
    /// Associativity is O(order³); at the catalog cap this is still desk
    /// scale, but prefer small orders in hot test paths.
    pub fn verify_axioms(&self) -> Result<(), GroupError> {
        let n = self.order as u32;
        let e = self.identity;
        for a in 0..n {
            if self.op(e, a) != a || self.op(a, e) != a {
                return Err(GroupError::LawViolation {
                    law: "identity",
                    witness: [a, e, 0],
                });
            }
            let inv = self.inverse_of(a);
            if self.op(inv, a) != e || self.op(a, inv) != e {
                return Err(GroupError::LawViolation {
                    law: "inverse",
                    witness: [a, inv, 0],
                });
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = self.op(a, b);
                for c in 0..n {
                    if self.op(ab, c) != self.op(a, self.op(b, c)) {
                        return Err(GroupError::LawViolation {
                            law: "associativity",
                            witness: [a, b, c],
                        });
                    }
                }
            }
        }
        Ok(())
    }
}

fn check_order(family: &'static str, order: usize) -> Result<(), GroupError> {
    if order > MAX_ORDER {
        return Err(GroupError::InvalidParameter {
            family,
            reason: format!("order {order} exceeds the catalog cap of {MAX_ORDER}"),
        });
    }
    Ok(())
}

/// The cyclic group `Z_n` under addition mod `n`.
pub fn cyclic(n: usize) -> Result<FiniteGroup, GroupError> {
    if n == 0 {
        return Err(GroupError::InvalidParameter {
            family: "cyclic",
            reason: "order must be at least 1".into(),
        });
    }
    check_order("cyclic", n)?;
    let mut op = vec![0u32; n * n];
    for a in 0..n {
        for b in 0..n {
            op[a * n + b] = ((a + b) % n) as u32;
        }
    }
    let inverse = (0..n).map(|a| ((n - a) % n) as u32).collect();
    Ok(FiniteGroup::from_tables(format!("cyclic:{n}"), n, 0, op, inverse))
}

/// The dihedral group of order `2n` (symmetries of the regular n-gon).
///
/// Element `ε·n + k` stands for `sᵉ rᵏ` with `r` the rotation and `s` a
/// reflection, subject to `s r s = r⁻¹`.
pub fn dihedral(n: usize) -> Result<FiniteGroup, GroupError> {
    if n < 3 {
        return Err(GroupError::InvalidParameter {
            family: "dihedral",
            reason: format!("need n >= 3, got {n}"),
        });
    }
    let order = 2 * n;
    check_order("dihedral", order)?;
    let encode = |flip: usize, rot: usize| (flip * n + rot) as u32;
    let mut op = vec![0u32; order * order];
    for f1 in 0..2 {
        for k1 in 0..n {
            for f2 in 0..2 {
                for k2 in 0..n {
                    // (s^f1 r^k1)(s^f2 r^k2) = s^(f1^f2) r^(k2 - k1) when f2 = 1,
                    //                          s^f1       r^(k1 + k2) when f2 = 0
                    let (flip, rot) = if f2 == 0 {
                        (f1, (k1 + k2) % n)
                    } else {
                        (f1 ^ 1, (n + k2 - k1) % n)
                    };
                    op[encode(f1, k1) as usize * order + encode(f2, k2) as usize] =
                        encode(flip, rot);
                }
            }
        }
    }
    let mut inverse = vec![0u32; order];
    for f in 0..2 {
        for k in 0..n {
            inverse[encode(f, k) as usize] = if f == 0 {
                encode(0, (n - k) % n)
            } else {
                encode(1, k) // reflections are involutions
            };
        }
    }
    Ok(FiniteGroup::from_tables(format!("dihedral:{n}"), order, 0, op, inverse))
}

fn permutations_lex(n: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut current: Vec<u8> = (0..n as u8).collect();
    loop {
        out.push(current.clone());
        // next_permutation in lexicographic order
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| current[i] < current[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| current[j] > current[i]).unwrap();
        current.swap(i, j);
        current[i + 1..].reverse();
    }
    out
}

/// The symmetric group `S_n` on `{0, …, n-1}`, `n ≤ 6`.
///
/// Elements are permutations indexed by lexicographic rank of their
/// one-line notation; the product `p·q` acts by `(p·q)(i) = p(q(i))`.
pub fn symmetric(n: usize) -> Result<FiniteGroup, GroupError> {
    if n == 0 || n > 6 {
        return Err(GroupError::InvalidParameter {
            family: "symmetric",
            reason: format!("need 1 <= n <= 6 (order up to 720), got {n}"),
        });
    }
    let perms = permutations_lex(n);
    let order = perms.len();
    let rank: HashMap<&[u8], u32> = perms
        .iter()
        .enumerate()
        .map(|(i, p)| (p.as_slice(), i as u32))
        .collect();
    let mut op = vec![0u32; order * order];
    let mut inverse = vec![0u32; order];
    let mut composed = vec![0u8; n];
    for (i, p) in perms.iter().enumerate() {
        for (j, q) in perms.iter().enumerate() {
            for (k, slot) in composed.iter_mut().enumerate() {
                *slot = p[q[k] as usize];
            }
            op[i * order + j] = rank[composed.as_slice()];
        }
        let mut inv = vec![0u8; n];
        for (k, &pk) in p.iter().enumerate() {
            inv[pk as usize] = k as u8;
        }
        inverse[i] = rank[inv.as_slice()];
    }
    Ok(FiniteGroup::from_tables(format!("symmetric:{n}"), order, 0, op, inverse))
}

/// The Heisenberg group mod `p`: upper unitriangular 3×3 matrices over
/// `Z_p`, order `p³`.
///
/// The triple `(a,b,c)` (matrix entries above the diagonal, `c` in the
/// corner) is encoded as index `a·p² + b·p + c`; matrix multiplication
/// gives the law `(a,b,c)·(a',b',c') = (a+a', b+b', c+c'+a·b')`.
pub fn heisenberg_mod(p: usize) -> Result<FiniteGroup, GroupError> {
    if !matches!(p, 2 | 3 | 5 | 7) {
        return Err(GroupError::InvalidParameter {
            family: "heisenberg",
            reason: format!("modulus must be a prime <= 7, got {p}"),
        });
    }
    let order = p * p * p;
    let mut op = vec![0u32; order * order];
    let mut inverse = vec![0u32; order];
    for a1 in 0..p {
        for b1 in 0..p {
            for c1 in 0..p {
                let i = heisenberg_encode(p, [a1 as u32, b1 as u32, c1 as u32]);
                for a2 in 0..p {
                    for b2 in 0..p {
                        for c2 in 0..p {
                            let j = heisenberg_encode(p, [a2 as u32, b2 as u32, c2 as u32]);
                            let prod = [
                                ((a1 + a2) % p) as u32,
                                ((b1 + b2) % p) as u32,
                                ((c1 + c2 + a1 * b2) % p) as u32,
                            ];
                            op[i as usize * order + j as usize] = heisenberg_encode(p, prod);
                        }
                    }
                }
                let inv = [
                    ((p - a1) % p) as u32,
                    ((p - b1) % p) as u32,
                    ((a1 * b1 % p + p - c1) % p) as u32,
                ];
                inverse[i as usize] = heisenberg_encode(p, inv);
            }
        }
    }
    Ok(FiniteGroup::from_tables(format!("heisenberg:{p}"), order, 0, op, inverse))
}

/// Index of the triple `(a,b,c)` in [`heisenberg_mod`]'s encoding.
pub fn heisenberg_encode(p: usize, triple: [u32; 3]) -> u32 {
    let p = p as u32;
    triple[0] * p * p + triple[1] * p + triple[2]
}

/// Inverse of [`heisenberg_encode`].
pub fn heisenberg_decode(p: usize, index: u32) -> [u32; 3] {
    let p = p as u32;
    [index / (p * p), (index / p) % p, index % p]
}

/// The direct product `G × H` with index `g·|H| + h` and componentwise law.
pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Result<FiniteGroup, GroupError> {
    let order = g.order() * h.order();
    check_order("product", order)?;
    let hn = h.order();
    let mut op = vec![0u32; order * order];
    let mut inverse = vec![0u32; order];
    for g1 in 0..g.order() as u32 {
        for h1 in 0..hn as u32 {
            let i = g1 * hn as u32 + h1;
            for g2 in 0..g.order() as u32 {
                for h2 in 0..hn as u32 {
                    let j = g2 * hn as u32 + h2;
                    op[i as usize * order + j as usize] =
                        g.op(g1, g2) * hn as u32 + h.op(h1, h2);
                }
            }
            inverse[i as usize] = g.inverse_of(g1) * hn as u32 + h.inverse_of(h1);
        }
    }
    let identity = g.identity() * hn as u32 + h.identity();
    Ok(FiniteGroup::from_tables(
        format!("product:{},{}", g.name(), h.name()),
        order,
        identity,
        op,
        inverse,
    ))
}

/// The induced difference structure `Δ(a,b) = a⁻¹·b`.
///
/// Satisfies axioms 1 and 2 exactly:
/// `Δ(Δ(a,b), Δ(a,c)) = (a⁻¹b)⁻¹(a⁻¹c) = b⁻¹c` and `z ↦ z⁻¹a` is a
/// bijection.
pub fn group_delta(group: &FiniteGroup) -> DeltaStructure {
    let g = group.clone();
    DeltaStructure::with_carrier(group.elements(), move |a, b| {
        Element(g.op(g.inverse_of(a.0), b.0))
    })
}

/// The relabeled difference `Δ(a,b) = σ(a⁻¹·b)` together with the weak
/// companions that witness weak axioms 1 and 2:
///
/// * `F(u,v) = σ(σ⁻¹(u)⁻¹ · σ⁻¹(v))`, so `F(Δ(a,b), Δ(a,c)) = Δ(b,c)`;
/// * `G(u,b) = b · σ⁻¹(u)⁻¹`, which recovers `a` from `u = Δ(a,b)`.
pub fn relabeled_delta(group: &FiniteGroup, sigma: &[u32]) -> Result<DeltaStructure, GroupError> {
    let n = group.order();
    if sigma.len() != n {
        return Err(GroupError::NotABijection);
    }
    let mut sigma_inv = vec![u32::MAX; n];
    for (i, &s) in sigma.iter().enumerate() {
        if s as usize >= n || sigma_inv[s as usize] != u32::MAX {
            return Err(GroupError::NotABijection);
        }
        sigma_inv[s as usize] = i as u32;
    }
    let sigma: Arc<Vec<u32>> = Arc::new(sigma.to_vec());
    let sigma_inv: Arc<Vec<u32>> = Arc::new(sigma_inv);

    let delta = {
        let g = group.clone();
        let sigma = Arc::clone(&sigma);
        move |a: Element, b: Element| Element(sigma[g.op(g.inverse_of(a.0), b.0) as usize])
    };
    let weak_f = {
        let g = group.clone();
        let sigma = Arc::clone(&sigma);
        let sigma_inv = Arc::clone(&sigma_inv);
        move |u: Element, v: Element| {
            let iu = sigma_inv[u.0 as usize];
            let iv = sigma_inv[v.0 as usize];
            Element(sigma[g.op(g.inverse_of(iu), iv) as usize])
        }
    };
    let weak_g = {
        let g = group.clone();
        let sigma_inv = Arc::clone(&sigma_inv);
        move |u: Element, b: Element| Element(g.op(b.0, g.inverse_of(sigma_inv[u.0 as usize])))
    };

    Ok(DeltaStructure::with_carrier(group.elements(), delta).with_weak_fns(weak_f, weak_g))
}

/// A seeded uniformly random permutation of `0..order`, for relabeling
/// fixtures reproducibly.
pub fn seeded_permutation(order: usize, seed: u64) -> Vec<u32> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perm: Vec<u32> = (0..order as u32).collect();
    perm.shuffle(&mut rng);
    perm
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::delta::{CheckMode, FiniteSet};

    #[test]
    fn cyclic_basics() {
        assert!(cyclic(0).is_err());
        let g1 = cyclic(1).unwrap();
        assert_eq!(g1.order(), 1);
        assert_eq!(g1.op(0, 0), 0);
        let g6 = cyclic(6).unwrap();
        assert_eq!(g6.op(2, 5), 1);
        assert_eq!(g6.inverse_of(2), 4);
        g6.verify_axioms().unwrap();
    }

    #[test]
    fn dihedral_matches_transformation_oracle() {
        // Independent model: (f, k) acts on residues by x -> (-1)^f x + k.
        // Composition of actions gives the expected table.
        let n = 4usize;
        let g = dihedral(n).unwrap();
        g.verify_axioms().unwrap();
        let apply = |f: usize, k: usize, x: usize| -> usize {
            if f == 0 {
                (x + k) % n
            } else {
                (n - (x + k) % n) % n // reflect after rotating... see below
            }
        };
        // Realize s^f r^k as the map x -> s^f (x + k); s is x -> -x.
        for f1 in 0..2 {
            for k1 in 0..n {
                for f2 in 0..2 {
                    for k2 in 0..n {
                        let i = (f1 * n + k1) as u32;
                        let j = (f2 * n + k2) as u32;
                        let prod = g.op(i, j) as usize;
                        let (pf, pk) = (prod / n, prod % n);
                        for x in 0..n {
                            // first apply (f2,k2), then (f1,k1)
                            let via_parts = apply(f1, k1, apply(f2, k2, x));
                            let via_table = apply(pf, pk, x);
                            assert_eq!(via_parts, via_table, "mismatch at {i},{j},{x}");
                        }
                    }
                }
            }
        }
        assert!(dihedral(2).is_err());
    }

    #[test]
    fn symmetric_3_is_nonabelian_with_order_6() {
        let g = symmetric(3).unwrap();
        assert_eq!(g.order(), 6);
        g.verify_axioms().unwrap();
        assert!(!g.is_abelian());
        assert!(symmetric(7).is_err());
    }

    #[test]
    fn symmetric_3_table_matches_permutation_oracle() {
        // Rebuild the composition independently from lex-ranked one-line
        // permutations and compare every product.
        let g = symmetric(3).unwrap();
        let perms: [[u8; 3]; 6] = [
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ];
        let rank = |p: [u8; 3]| perms.iter().position(|q| *q == p).unwrap() as u32;
        for (i, p) in perms.iter().enumerate() {
            for (j, q) in perms.iter().enumerate() {
                let composed = [p[q[0] as usize], p[q[1] as usize], p[q[2] as usize]];
                assert_eq!(g.op(i as u32, j as u32), rank(composed));
            }
        }
    }

    #[test]
    fn heisenberg_matches_matrix_oracle() {
        let p = 3usize;
        let g = heisenberg_mod(p).unwrap();
        assert_eq!(g.order(), 27);
        g.verify_axioms().unwrap();
        // Oracle: multiply the actual unitriangular matrices mod p.
        let matmul = |x: [u32; 3], y: [u32; 3]| -> [u32; 3] {
            let m1 = [[1, x[0], x[2]], [0, 1, x[1]], [0, 0, 1u32]];
            let m2 = [[1, y[0], y[2]], [0, 1, y[1]], [0, 0, 1u32]];
            let mut m = [[0u32; 3]; 3];
            for r in 0..3 {
                for c in 0..3 {
                    m[r][c] = (0..3).map(|k| m1[r][k] * m2[k][c]).sum::<u32>() % p as u32;
                }
            }
            [m[0][1], m[1][2], m[0][2]]
        };
        for i in 0..g.order() as u32 {
            for j in 0..g.order() as u32 {
                let expect = heisenberg_encode(p, matmul(heisenberg_decode(p, i), heisenberg_decode(p, j)));
                assert_eq!(g.op(i, j), expect);
            }
        }
        assert!(heisenberg_mod(4).is_err());
        assert!(heisenberg_mod(11).is_err());
    }

    #[test]
    fn symmetric_6_reaches_the_enumeration_bound() {
        let g = symmetric(6).unwrap();
        assert_eq!(g.order(), 720);
        // identity/inverse laws for every element; associativity sampled
        // (the full 720³ sweep belongs in release-mode runs)
        let e = g.identity();
        for a in 0..720u32 {
            assert_eq!(g.op(e, a), a);
            assert_eq!(g.op(a, g.inverse_of(a)), e);
        }
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        use rand::Rng;
        for _ in 0..2000 {
            let a = rng.random_range(0..720u32);
            let b = rng.random_range(0..720u32);
            let c = rng.random_range(0..720u32);
            assert_eq!(g.op(g.op(a, b), c), g.op(a, g.op(b, c)));
        }
    }

    #[test]
    fn catalog_order_caps() {
        assert!(cyclic(4097).is_err());
        assert!(dihedral(2049).is_err(), "order 4098 exceeds the cap");
        assert!(dihedral(2048).is_ok());
    }

    #[test]
    fn product_of_c2_c3_is_abelian_of_order_6() {
        let g = direct_product(&cyclic(2).unwrap(), &cyclic(3).unwrap()).unwrap();
        assert_eq!(g.order(), 6);
        assert!(g.is_abelian());
        g.verify_axioms().unwrap();
        let too_big = direct_product(&cyclic(100).unwrap(), &cyclic(100).unwrap());
        assert!(too_big.is_err());
    }

    #[test]
    fn group_delta_satisfies_both_axioms() {
        for g in [
            cyclic(6).unwrap(),
            dihedral(4).unwrap(),
            symmetric(3).unwrap(),
            heisenberg_mod(3).unwrap(),
        ] {
            let s = group_delta(&g);
            assert!(s.check_axiom1(CheckMode::Exhaustive).unwrap().ok, "{}", g.name());
            assert!(s.check_axiom2(CheckMode::Exhaustive).unwrap().ok, "{}", g.name());
        }
    }

    #[test]
    fn group_delta_values() {
        let s = group_delta(&cyclic(6).unwrap());
        assert_eq!(s.delta(Element(2), Element(5)), Element(3));
        let g = symmetric(3).unwrap();
        let s = group_delta(&g);
        for a in g.elements() {
            assert_eq!(s.delta(a, a), Element(g.identity()));
        }
    }

    #[test]
    fn relabeled_delta_passes_weak_axioms_only() {
        let g = cyclic(6).unwrap();
        // transposition (0 1)
        let sigma = [1u32, 0, 2, 3, 4, 5];
        let s = relabeled_delta(&g, &sigma).unwrap();
        let weak = s.check_weak_axioms(CheckMode::Exhaustive).unwrap();
        assert!(weak.ok1 && weak.ok2);
        let plain = s.check_axiom1(CheckMode::Exhaustive).unwrap();
        assert!(!plain.ok, "transposition relabeling should break axiom 1");
        // ... but the injection still works under the weak hypotheses:
        let set = |v: &[u32]| FiniteSet::new(v.iter().copied().map(Element));
        let w = s
            .build_injection(&set(&[0, 1]), &set(&[0, 3]), &set(&[0, 2]))
            .unwrap();
        assert!(w.is_injective);
    }

    #[test]
    fn relabeled_with_identity_matches_group_delta() {
        let g = cyclic(6).unwrap();
        let sigma: Vec<u32> = (0..6).collect();
        let relabeled = relabeled_delta(&g, &sigma).unwrap();
        let plain = group_delta(&g);
        for a in g.elements() {
            for b in g.elements() {
                assert_eq!(relabeled.delta(a, b), plain.delta(a, b));
            }
        }
        assert!(relabeled.check_axiom1(CheckMode::Exhaustive).unwrap().ok);
    }

    #[test]
    fn relabeled_rejects_non_bijections() {
        let g = cyclic(4).unwrap();
        assert_eq!(
            relabeled_delta(&g, &[0, 0, 1, 2]).unwrap_err(),
            GroupError::NotABijection
        );
        assert_eq!(
            relabeled_delta(&g, &[0, 1, 2]).unwrap_err(),
            GroupError::NotABijection
        );
    }

    #[test]
    fn wrong_weak_f_is_caught() {
        let g = cyclic(6).unwrap();
        let sigma = seeded_permutation(6, 3);
        let good = relabeled_delta(&g, &sigma).unwrap();
        assert!(good.check_weak_axioms(CheckMode::Exhaustive).unwrap().ok1);

        // Same delta, but F conjugated by the wrong permutation.
        let bad_sigma = seeded_permutation(6, 4);
        let tables = relabeled_delta(&g, &bad_sigma).unwrap();
        let delta_sigma = Arc::new(sigma.clone());
        let g2 = g.clone();
        let broken = DeltaStructure::with_carrier(g.elements(), {
            let sigma = Arc::clone(&delta_sigma);
            move |a, b| Element(sigma[g2.op(g2.inverse_of(a.0), b.0) as usize])
        })
        .with_weak_fns(
            move |u, v| tables.delta(u, v), // F built for bad_sigma, not sigma
            {
                let g3 = g.clone();
                let mut sigma_inv = [0u32; 6];
                for (i, &s) in sigma.iter().enumerate() {
                    sigma_inv[s as usize] = i as u32;
                }
                move |u: Element, b: Element| {
                    Element(g3.op(b.0, g3.inverse_of(sigma_inv[u.0 as usize])))
                }
            },
        );
        let report = broken.check_weak_axioms(CheckMode::Exhaustive).unwrap();
        assert!(!report.ok1);
        assert!(report.counterexample_f.is_some());
        assert!(report.ok2);
    }

    #[test]
    fn seeded_permutations_are_reproducible() {
        assert_eq!(seeded_permutation(10, 7), seeded_permutation(10, 7));
        assert_ne!(seeded_permutation(10, 7), seeded_permutation(10, 8));
    }
}
