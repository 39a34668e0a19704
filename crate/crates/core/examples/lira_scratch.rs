use strata_core::parse::parse;
use strata_core::qe::lira;
use strata_core::eval::{evaluate, assignment};
use strata_core::rat::Rat;

fn main() {
    // decide_ls examples
    for (src, expect) in [
        ("A x. (Int(x) -> Int(x + 1))", true),
        ("E x. (Int(x) and 0 < x and x < 1)", false),
        ("A x. E y. (Int(y) and y <= x and x < y + 1)", true),
    ] {
        let f = parse(src).unwrap();
        let t0 = std::time::Instant::now();
        let got = lira::decide_ls(&f).unwrap();
        println!("{} -> {} ({:?})", src, got, t0.elapsed());
        assert_eq!(got, expect, "{}", src);
    }
    // eliminate_ls examples with grid check
    for src in [
        "E y. (Int(y) and x < y and y <= x + 1)",
        "E y. (Int(y) and Int(2*y) and y = x)",
        "E y. (Int(2*y) and y = x)",
        "Int(x)",
        "x < 1/2",
    ] {
        let f = parse(src).unwrap();
        let t0 = std::time::Instant::now();
        let g = lira::eliminate_ls(&f).unwrap();
        println!("{}  =>  {}  ({:?})", src, g, t0.elapsed());
        assert!(g.is_quantifier_free());
        // grid check step 1/4 on [-3,3]
        for k in -12..=12i64 {
            let x = Rat::new(k, 4);
            let a = assignment(&[("x", x.clone())]);
            let lhs = brute(&f, &a);
            let rhs = evaluate(&g, &a).unwrap();
            assert_eq!(lhs, rhs, "{} at x={}", src, x);
        }
    }
    // floor-parity set: E k. (Int(k) and 2k <= x < 2k+1) -- via coefficient-2 trick
    let f = parse("E y. (Int(y) and y + y <= x and x < y + y + 1)").unwrap();
    let t0 = std::time::Instant::now();
    let g = lira::eliminate_ls(&f).unwrap();
    println!("floor-parity  =>  {}  ({:?})", g, t0.elapsed());
    for k in -12..=12i64 {
        let x = Rat::new(k, 4);
        let a = assignment(&[("x", x.clone())]);
        let lhs = brute(&f, &a);
        let rhs = evaluate(&g, &a).unwrap();
        assert_eq!(lhs, rhs, "floor-parity at x={}", x);
    }
    println!("all good");
}

// brute: quantifiers over Int(y)-guarded conjunctions can be checked by trying
// integer candidates near x; here bounded formulas only
fn brute(f: &strata_core::Formula, a: &strata_core::Assignment) -> bool {
    use strata_core::Formula as F;
    match f {
        F::True => true,
        F::False => false,
        F::Atom(_) => evaluate(f, a).unwrap(),
        F::Not(g) => !brute(g, a),
        F::And(gs) => gs.iter().all(|g| brute(g, a)),
        F::Or(gs) => gs.iter().any(|g| brute(g, a)),
        F::Exists(v, _, g) => {
            // candidates: quarter-steps in [-8, 8]
            (-32..=32).any(|k| {
                let mut a2 = a.clone();
                a2.insert(v.clone(), Rat::new(k, 4));
                brute(g, &a2)
            })
        }
        F::Forall(v, _, g) => (-32..=32).all(|k| {
            let mut a2 = a.clone();
            a2.insert(v.clone(), Rat::new(k, 4));
            brute(g, &a2)
        }),
    }
}
