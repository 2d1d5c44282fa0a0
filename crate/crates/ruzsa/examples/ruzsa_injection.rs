//! Build the explicit injection behind the Ruzsa triangle inequality and
//! inspect every piece: the difference sets, the section, the materialized
//! map, and the cardinality bound.
//!
//! ```bash
//! cargo run --example ruzsa_injection
//! ```

use ruzsa::delta::{Element, FiniteSet};
use ruzsa::groups::{cyclic, group_delta, symmetric};

fn set(elements: &[u32]) -> FiniteSet {
    FiniteSet::new(elements.iter().copied().map(Element))
}

fn show(members: &FiniteSet) -> String {
    let items: Vec<String> = members.iter().map(|e| e.to_string()).collect();
    format!("{{{}}}", items.join(","))
}

fn main() {
    // Z_6 with Δ(a,b) = -a + b.
    let structure = group_delta(&cyclic(6).unwrap());
    let a = set(&[0, 1]);
    let b = set(&[0, 3]);
    let c = set(&[0, 2]);

    let dca = structure.delta_set(&c, &a).unwrap();
    let dbc = structure.delta_set(&b, &c).unwrap();
    let dba = structure.delta_set(&b, &a).unwrap();
    println!("Z_6, A = {}, B = {}, C = {}", show(&a), show(&b), show(&c));
    println!("  Δ(C,A) = {}  Δ(B,C) = {}  Δ(B,A) = {}", show(&dca), show(&dbc), show(&dba));

    let section = structure.build_section(&c, &a).unwrap();
    println!("  section of Δ(C,A) (lexicographically least generating pair):");
    for x in section.domain().iter() {
        let (f, g) = section.pair(x).unwrap();
        println!("    x = {x}: (f,g) = ({f},{g})   check Δ(f,g) = {}", structure.delta(f, g));
    }

    let check = structure.ruzsa_inequality(&a, &b, &c).unwrap();
    println!("  injection i(x,b) = (Δ(b,f(x)), Δ(b,g(x))):");
    for entry in &check.witness.entries {
        println!("    ({}, {}) -> ({}, {})", entry.x, entry.b, entry.c, entry.d);
    }
    println!(
        "  |Δ(C,A)|·|B| = {} <= {} = |Δ(B,C)|·|Δ(B,A)|   (injective: {})",
        check.lhs, check.rhs, check.witness.is_injective
    );

    // The same construction in a nonabelian group.
    let s3 = symmetric(3).unwrap();
    let structure = group_delta(&s3);
    let a = set(&[0, 1, 3]);
    let b = set(&[2, 4]);
    let c = set(&[1, 5]);
    let check = structure.ruzsa_inequality(&a, &b, &c).unwrap();
    println!(
        "\nS_3, |A|=3 |B|=2 |C|=2: {} <= {} holds = {}, injective = {}",
        check.lhs, check.rhs, check.holds, check.witness.is_injective
    );
}
