//! Exhaustive law scans for tabled double categories.

use super::{DoubleCategory, Sort};
use crate::report::ValidationReport;

pub const BOUNDARY: &str = "square boundary";
pub const MISSING: &str = "missing composite";
pub const COMPOSITE_BOUNDARY: &str = "composite boundary";
pub const UNIT: &str = "unit law";
pub const ASSOCIATIVITY: &str = "associativity";
pub const INTERCHANGE: &str = "interchange";
pub const IDENTITY_COHERENCE: &str = "identity coherence";

/// Every law of a strict double category.
pub fn validate_double_category(d: &DoubleCategory) -> ValidationReport {
    validate_laws(d, true)
}

/// Laws of the underlying structure; with `strict_horizontal` false the
/// horizontal unit and associativity laws are skipped (they hold only up to
/// coherence squares in weak presentations).
pub fn validate_laws(d: &DoubleCategory, strict_horizontal: bool) -> ValidationReport {
    let mut r = ValidationReport::default();
    let h = |i| d.cell_ref(Sort::HMor, i);
    let v = |i| d.cell_ref(Sort::VMor, i);
    let s = |i| d.cell_ref(Sort::Square, i);

    for (i, q) in d.squares().iter().enumerate() {
        let (t, b, l, rt) = (d.hmor(q.top), d.hmor(q.bottom), d.vmor(q.left), d.vmor(q.right));
        if t.src != l.src || t.tgt != rt.src || b.src != l.tgt || b.tgt != rt.tgt {
            r.push(BOUNDARY, vec![s(i)]);
        }
    }
    if !r.is_valid() {
        return r;
    }

    let out_h = outgoing(d.num_objects(), d.hmors().iter().map(|a| a.src));
    let out_v = outgoing(d.num_objects(), d.vmors().iter().map(|a| a.src));

    // Totality and boundaries of composites.
    for (a, ha) in d.hmors().iter().enumerate() {
        for &b in &out_h[ha.tgt] {
            match d.hcomp_m(b, a) {
                None => r.push(MISSING, vec![h(b), h(a)]),
                Some(c) => {
                    if d.hmor(c).src != ha.src || d.hmor(c).tgt != d.hmor(b).tgt {
                        r.push(COMPOSITE_BOUNDARY, vec![h(b), h(a), h(c)]);
                    }
                }
            }
        }
    }
    for (u, vu) in d.vmors().iter().enumerate() {
        for &w in &out_v[vu.tgt] {
            match d.vcomp_m(w, u) {
                None => r.push(MISSING, vec![v(w), v(u)]),
                Some(c) => {
                    if d.vmor(c).src != vu.src || d.vmor(c).tgt != d.vmor(w).tgt {
                        r.push(COMPOSITE_BOUNDARY, vec![v(w), v(u), v(c)]);
                    }
                }
            }
        }
    }
    for (a, qa) in d.squares().iter().enumerate() {
        for &b in d.squares_with_left(qa.right) {
            let qb = d.square(b);
            match d.hcomp_sq(b, a) {
                None => r.push(MISSING, vec![s(b), s(a)]),
                Some(c) => {
                    let qc = d.square(c);
                    let ok = Some(qc.top) == d.hcomp_m(qb.top, qa.top)
                        && Some(qc.bottom) == d.hcomp_m(qb.bottom, qa.bottom)
                        && qc.left == qa.left
                        && qc.right == qb.right;
                    if !ok {
                        r.push(COMPOSITE_BOUNDARY, vec![s(b), s(a), s(c)]);
                    }
                }
            }
        }
        for &b in d.squares_with_top(qa.bottom) {
            let qb = d.square(b);
            match d.vcomp_sq(b, a) {
                None => r.push(MISSING, vec![s(b), s(a)]),
                Some(c) => {
                    let qc = d.square(c);
                    let ok = qc.top == qa.top
                        && qc.bottom == qb.bottom
                        && Some(qc.left) == d.vcomp_m(qb.left, qa.left)
                        && Some(qc.right) == d.vcomp_m(qb.right, qa.right);
                    if !ok {
                        r.push(COMPOSITE_BOUNDARY, vec![s(b), s(a), s(c)]);
                    }
                }
            }
        }
    }
    if !r.is_valid() {
        return r;
    }

    // Units.
    for (a, ha) in d.hmors().iter().enumerate() {
        if strict_horizontal
            && (d.hcomp_m(d.id_h(ha.tgt), a) != Some(a) || d.hcomp_m(a, d.id_h(ha.src)) != Some(a))
        {
            r.push(UNIT, vec![h(a)]);
        }
    }
    for (u, vu) in d.vmors().iter().enumerate() {
        if d.vcomp_m(d.id_v(vu.tgt), u) != Some(u) || d.vcomp_m(u, d.id_v(vu.src)) != Some(u) {
            r.push(UNIT, vec![v(u)]);
        }
    }
    for (a, qa) in d.squares().iter().enumerate() {
        if strict_horizontal
            && (d.hcomp_sq(d.id_sq(qa.right), a) != Some(a) || d.hcomp_sq(a, d.id_sq(qa.left)) != Some(a))
        {
            r.push(UNIT, vec![s(a)]);
        }
        if d.vcomp_sq(d.e_sq(qa.bottom), a) != Some(a) || d.vcomp_sq(a, d.e_sq(qa.top)) != Some(a) {
            r.push(UNIT, vec![s(a)]);
        }
    }

    // Associativity.
    if strict_horizontal {
        for (a, ha) in d.hmors().iter().enumerate() {
            for &b in &out_h[ha.tgt] {
                for &c in &out_h[d.hmor(b).tgt] {
                    let l = d.hcomp_m(c, b).and_then(|cb| d.hcomp_m(cb, a));
                    let rr = d.hcomp_m(b, a).and_then(|ba| d.hcomp_m(c, ba));
                    if l != rr {
                        r.push(ASSOCIATIVITY, vec![h(c), h(b), h(a)]);
                    }
                }
            }
        }
        for (a, qa) in d.squares().iter().enumerate() {
            for &b in d.squares_with_left(qa.right) {
                for &c in d.squares_with_left(d.square(b).right) {
                    let l = d.hcomp_sq(c, b).and_then(|cb| d.hcomp_sq(cb, a));
                    let rr = d.hcomp_sq(b, a).and_then(|ba| d.hcomp_sq(c, ba));
                    if l != rr {
                        r.push(ASSOCIATIVITY, vec![s(c), s(b), s(a)]);
                    }
                }
            }
        }
    }
    for (u, vu) in d.vmors().iter().enumerate() {
        for &w in &out_v[vu.tgt] {
            for &x in &out_v[d.vmor(w).tgt] {
                let l = d.vcomp_m(x, w).and_then(|xw| d.vcomp_m(xw, u));
                let rr = d.vcomp_m(w, u).and_then(|wu| d.vcomp_m(x, wu));
                if l != rr {
                    r.push(ASSOCIATIVITY, vec![v(x), v(w), v(u)]);
                }
            }
        }
    }
    for (a, qa) in d.squares().iter().enumerate() {
        for &b in d.squares_with_top(qa.bottom) {
            for &c in d.squares_with_top(d.square(b).bottom) {
                let l = d.vcomp_sq(c, b).and_then(|cb| d.vcomp_sq(cb, a));
                let rr = d.vcomp_sq(b, a).and_then(|ba| d.vcomp_sq(c, ba));
                if l != rr {
                    r.push(ASSOCIATIVITY, vec![s(c), s(b), s(a)]);
                }
            }
        }
    }

    // Interchange on every 2x2 grid: alpha beta on top, gamma delta below.
    for (alpha, qa) in d.squares().iter().enumerate() {
        for &beta in d.squares_with_left(qa.right) {
            for &gamma in d.squares_with_top(qa.bottom) {
                for &delta in d.squares_with_top(d.square(beta).bottom) {
                    if d.square(delta).left != d.square(gamma).right {
                        continue;
                    }
                    let l = match (d.hcomp_sq(delta, gamma), d.hcomp_sq(beta, alpha)) {
                        (Some(x), Some(y)) => d.vcomp_sq(x, y),
                        _ => None,
                    };
                    let rr = match (d.vcomp_sq(delta, beta), d.vcomp_sq(gamma, alpha)) {
                        (Some(x), Some(y)) => d.hcomp_sq(x, y),
                        _ => None,
                    };
                    if l != rr {
                        r.push(INTERCHANGE, vec![s(alpha), s(beta), s(gamma), s(delta)]);
                    }
                }
            }
        }
    }

    // Identities compose to identities.
    for ((b, a), c) in d.hcomp_m_entries() {
        if d.hcomp_sq(d.e_sq(b), d.e_sq(a)) != Some(d.e_sq(c)) {
            r.push(IDENTITY_COHERENCE, vec![h(b), h(a)]);
        }
    }
    for ((w, u), c) in d.vcomp_m_entries() {
        if d.vcomp_sq(d.id_sq(w), d.id_sq(u)) != Some(d.id_sq(c)) {
            r.push(IDENTITY_COHERENCE, vec![v(w), v(u)]);
        }
    }
    r
}

fn outgoing(n: usize, srcs: impl Iterator<Item = usize>) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]; n];
    for (i, s) in srcs.enumerate() {
        out[s].push(i);
    }
    out
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::dbl::DoubleCategoryBuilder;

    /// 0 -f-> 1 -g-> 2 with an explicit composite.
    fn chain() -> DoubleCategoryBuilder {
        let mut b = DoubleCategoryBuilder::new("Three");
        b.object("0").object("1").object("2");
        b.hmor("f", "0", "1").hmor("g", "1", "2").hmor("h", "0", "2");
        b
    }

    #[test]
    fn chain_with_composite_is_valid() {
        let mut b = chain();
        b.hcomp_m("g", "f", "h");
        assert!(validate_double_category(&b.build().unwrap()).is_valid());
    }

    #[test]
    fn missing_composite_is_listed() {
        let r = validate_double_category(&chain().build().unwrap());
        assert!(r.has_law(MISSING));
        assert_eq!(r.violations[0].cells[0].id, "g");
        assert_eq!(r.violations[0].cells[1].id, "f");
    }

    #[test]
    fn bad_square_boundary_is_listed() {
        let mut b = DoubleCategoryBuilder::new("bad");
        b.object("0").object("1").hmor("a", "0", "1");
        b.square("s", "a", "a", "e_1", "e_1");
        let r = validate_double_category(&b.build().unwrap());
        assert!(r.has_law(BOUNDARY));
    }

    #[test]
    fn broken_idempotent_associativity_is_listed() {
        // x∘x = y, y∘x = x, x∘y = y: not associative at (x,x,x).
        let mut b = DoubleCategoryBuilder::new("bad");
        b.object("0").hmor("x", "0", "0").hmor("y", "0", "0");
        b.hcomp_m("x", "x", "y").hcomp_m("y", "x", "x").hcomp_m("x", "y", "y").hcomp_m("y", "y", "y");
        let d = b.build().unwrap();
        let r = validate_double_category(&d);
        assert!(r.has_law(ASSOCIATIVITY));
    }
}
