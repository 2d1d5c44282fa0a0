//! The weak-axiom pathway: relabeling a group difference by a permutation
//! breaks axiom 1 but keeps the weak axioms (witnessed by companions F and
//! G), and that is still enough for the injection.
//!
//! ```bash
//! cargo run --example weak_axioms
//! ```

use ruzsa::delta::{CheckMode, Element, FiniteSet};
use ruzsa::groups::{cyclic, relabeled_delta, seeded_permutation};

fn main() {
    let group = cyclic(6).unwrap();

    // σ = transposition (0 1): Δ(a,b) = σ(-a + b).
    let sigma = [1u32, 0, 2, 3, 4, 5];
    let structure = relabeled_delta(&group, &sigma).unwrap();

    let plain = structure.check_axiom1(CheckMode::Exhaustive).unwrap();
    println!("relabeled Z_6 by (0 1):");
    match plain.counterexample {
        Some([a, b, c]) => println!(
            "  plain axiom 1 fails at (a,b,c) = ({a},{b},{c}): Δ(Δ(a,b),Δ(a,c)) = {} but Δ(b,c) = {}",
            structure.delta(structure.delta(a, b), structure.delta(a, c)),
            structure.delta(b, c),
        ),
        None => println!("  plain axiom 1 unexpectedly holds"),
    }

    let weak = structure.check_weak_axioms(CheckMode::Exhaustive).unwrap();
    println!("  weak axiom 1 (via F): {}", if weak.ok1 { "ok" } else { "FAIL" });
    println!("  weak axiom 2 (via G): {}", if weak.ok2 { "ok" } else { "FAIL" });

    // the injection only needs the weak pair:
    let set = |v: &[u32]| FiniteSet::new(v.iter().copied().map(Element));
    let check = structure
        .ruzsa_inequality(&set(&[0, 1]), &set(&[0, 3]), &set(&[0, 2]))
        .unwrap();
    println!(
        "  injection on A={{0,1}}, B={{0,3}}, C={{0,2}}: {} <= {}, injective = {}",
        check.lhs, check.rhs, check.witness.is_injective
    );

    // The picture is the same for random relabelings.
    println!("\nten seeded random relabelings of Z_6:");
    for seed in 0..10 {
        let sigma = seeded_permutation(group.order(), seed);
        let structure = relabeled_delta(&group, &sigma).unwrap();
        let weak = structure.check_weak_axioms(CheckMode::Exhaustive).unwrap();
        let plain = structure.check_axiom1(CheckMode::Exhaustive).unwrap();
        println!(
            "  seed {seed}: weak ok = {}, plain axiom 1 ok = {}",
            weak.ok1 && weak.ok2,
            plain.ok
        );
    }
}
