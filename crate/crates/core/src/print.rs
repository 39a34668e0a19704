//! Canonical text rendering of formulas. Output re-parses to an
//! alpha-equivalent formula (divisibility atoms, which the surface grammar
//! rejects, print as `m | term`).

use crate::formula::{Atom, CmpOp, Formula, Sort};

// precedence levels: -> (1) < or (2) < and (3) < not (4); quantifiers
// extend maximally to the right so they print at the lowest level.
fn prec(f: &Formula) -> u8 {
    match f {
        Formula::Exists(..) | Formula::Forall(..) => 1,
        Formula::Or(_) => 2,
        Formula::And(_) => 3,
        Formula::Not(_) => 4,
        _ => 5,
    }
}

pub fn render(f: &Formula) -> String {
    let mut s = String::new();
    go(f, &mut s);
    s
}

fn child(f: &Formula, min: u8, out: &mut String) {
    if prec(f) < min {
        out.push('(');
        go(f, out);
        out.push(')');
    } else {
        go(f, out);
    }
}

fn go(f: &Formula, out: &mut String) {
    match f {
        Formula::True => out.push_str("true"),
        Formula::False => out.push_str("false"),
        Formula::Atom(a) => render_atom(a, out),
        Formula::Not(g) => {
            out.push_str("not ");
            child(g, 4, out);
        }
        Formula::And(gs) => {
            for (i, g) in gs.iter().enumerate() {
                if i > 0 {
                    out.push_str(" and ");
                }
                child(g, 4, out);
            }
        }
        Formula::Or(gs) => {
            for (i, g) in gs.iter().enumerate() {
                if i > 0 {
                    out.push_str(" or ");
                }
                child(g, 3, out);
            }
        }
        Formula::Exists(v, s, g) => {
            out.push_str("E ");
            out.push_str(v);
            if *s == Sort::Int {
                out.push_str(":int");
            }
            out.push_str(". ");
            go(g, out);
        }
        Formula::Forall(v, s, g) => {
            out.push_str("A ");
            out.push_str(v);
            if *s == Sort::Int {
                out.push_str(":int");
            }
            out.push_str(". ");
            go(g, out);
        }
    }
}

fn render_atom(a: &Atom, out: &mut String) {
    match a {
        Atom::Cmp(t, op) => {
            out.push_str(&t.to_string());
            out.push(' ');
            out.push_str(op.symbol());
            out.push_str(" 0");
        }
        Atom::Int(t) => {
            out.push_str("Int(");
            out.push_str(&t.to_string());
            out.push(')');
        }
        Atom::Div(m, t) => {
            out.push_str(&m.to_string());
            out.push_str(" | ");
            out.push_str(&t.to_string());
        }
        Atom::Pred(p, args) => {
            out.push_str(p);
            out.push('(');
            for (i, t) in args.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                out.push_str(&t.to_string());
            }
            out.push(')');
        }
    }
}

#[allow(unused)]
pub fn render_cmp_op(op: CmpOp) -> &'static str {
    op.symbol()
}
