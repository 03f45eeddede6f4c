//! Basic constructions: empty, terminal, coproduct, product, transpose.

use super::{DoubleCategory, DoubleCategoryBuilder};
use crate::error::Result;

pub fn empty(name: &str) -> DoubleCategory {
    DoubleCategoryBuilder::new(name).build().expect("empty presentation is well formed")
}

/// The terminal double category on one object `0`.
pub fn terminal(name: &str) -> DoubleCategory {
    let mut b = DoubleCategoryBuilder::new(name);
    b.object("0");
    b.build().expect("terminal presentation is well formed")
}

/// Name of a pair cell in a product.
pub fn pair_name(x: &str, y: &str) -> String {
    format!("{{{x}|{y}}}")
}

/// Name of a cell from summand `k` of a coproduct.
pub fn tagged_name(x: &str, k: usize) -> String {
    format!("{x}#{k}")
}

/// Copies every cell and table entry of `d`, renamed by `rename`.
fn copy_into(b: &mut DoubleCategoryBuilder, d: &DoubleCategory, rename: &dyn Fn(&str) -> String) {
    let n = |s: &str| rename(s);
    for o in d.objects() {
        b.object(&n(o));
    }
    for h in d.hmors() {
        b.hmor(&n(&h.name), &n(d.object(h.src)), &n(d.object(h.tgt)));
    }
    for v in d.vmors() {
        b.vmor(&n(&v.name), &n(d.object(v.src)), &n(d.object(v.tgt)));
    }
    for q in d.squares() {
        b.square(
            &n(&q.name),
            &n(&d.hmor(q.top).name),
            &n(&d.hmor(q.bottom).name),
            &n(&d.vmor(q.left).name),
            &n(&d.vmor(q.right).name),
        );
    }
    for (i, o) in d.objects().iter().enumerate() {
        b.id_h(&n(o), &n(&d.hmor(d.id_h(i)).name));
        b.id_v(&n(o), &n(&d.vmor(d.id_v(i)).name));
    }
    for (i, h) in d.hmors().iter().enumerate() {
        b.e_sq(&n(&h.name), &n(&d.square(d.e_sq(i)).name));
    }
    for (i, v) in d.vmors().iter().enumerate() {
        b.id_sq(&n(&v.name), &n(&d.square(d.id_sq(i)).name));
    }
    for ((x, y), z) in d.hcomp_m_entries() {
        b.hcomp_m(&n(&d.hmor(x).name), &n(&d.hmor(y).name), &n(&d.hmor(z).name));
    }
    for ((x, y), z) in d.vcomp_m_entries() {
        b.vcomp_m(&n(&d.vmor(x).name), &n(&d.vmor(y).name), &n(&d.vmor(z).name));
    }
    for ((x, y), z) in d.hcomp_sq_entries() {
        b.hcomp_sq(&n(&d.square(x).name), &n(&d.square(y).name), &n(&d.square(z).name));
    }
    for ((x, y), z) in d.vcomp_sq_entries() {
        b.vcomp_sq(&n(&d.square(x).name), &n(&d.square(y).name), &n(&d.square(z).name));
    }
}

/// Disjoint union; cells of the k-th summand are named `x#k`.
pub fn coproduct(a: &DoubleCategory, b: &DoubleCategory) -> Result<DoubleCategory> {
    let mut bl = DoubleCategoryBuilder::new(format!("{}+{}", a.name(), b.name()));
    bl.set_weak_horizontal(a.is_weak_horizontal() || b.is_weak_horizontal());
    copy_into(&mut bl, a, &|s| tagged_name(s, 0));
    copy_into(&mut bl, b, &|s| tagged_name(s, 1));
    bl.build()
}

/// Componentwise product; cells are named `{x|y}`.
pub fn product(a: &DoubleCategory, b: &DoubleCategory) -> Result<DoubleCategory> {
    let mut bl = DoubleCategoryBuilder::new(format!("{}x{}", a.name(), b.name()));
    let p = pair_name;
    for x in a.objects() {
        for y in b.objects() {
            bl.object(&p(x, y));
        }
    }
    for f in a.hmors() {
        for g in b.hmors() {
            bl.hmor(
                &p(&f.name, &g.name),
                &p(a.object(f.src), b.object(g.src)),
                &p(a.object(f.tgt), b.object(g.tgt)),
            );
        }
    }
    for f in a.vmors() {
        for g in b.vmors() {
            bl.vmor(
                &p(&f.name, &g.name),
                &p(a.object(f.src), b.object(g.src)),
                &p(a.object(f.tgt), b.object(g.tgt)),
            );
        }
    }
    for s in a.squares() {
        for t in b.squares() {
            bl.square(
                &p(&s.name, &t.name),
                &p(&a.hmor(s.top).name, &b.hmor(t.top).name),
                &p(&a.hmor(s.bottom).name, &b.hmor(t.bottom).name),
                &p(&a.vmor(s.left).name, &b.vmor(t.left).name),
                &p(&a.vmor(s.right).name, &b.vmor(t.right).name),
            );
        }
    }
    for (i, x) in a.objects().iter().enumerate() {
        for (j, y) in b.objects().iter().enumerate() {
            bl.id_h(&p(x, y), &p(&a.hmor(a.id_h(i)).name, &b.hmor(b.id_h(j)).name));
            bl.id_v(&p(x, y), &p(&a.vmor(a.id_v(i)).name, &b.vmor(b.id_v(j)).name));
        }
    }
    for (i, f) in a.hmors().iter().enumerate() {
        for (j, g) in b.hmors().iter().enumerate() {
            bl.e_sq(&p(&f.name, &g.name), &p(&a.square(a.e_sq(i)).name, &b.square(b.e_sq(j)).name));
        }
    }
    for (i, f) in a.vmors().iter().enumerate() {
        for (j, g) in b.vmors().iter().enumerate() {
            bl.id_sq(&p(&f.name, &g.name), &p(&a.square(a.id_sq(i)).name, &b.square(b.id_sq(j)).name));
        }
    }
    let hn = |d: &DoubleCategory, i: usize| d.hmor(i).name.clone();
    let vn = |d: &DoubleCategory, i: usize| d.vmor(i).name.clone();
    let sn = |d: &DoubleCategory, i: usize| d.square(i).name.clone();
    for ((x, y), z) in a.hcomp_m_entries() {
        for ((x2, y2), z2) in b.hcomp_m_entries() {
            bl.hcomp_m(&p(&hn(a, x), &hn(b, x2)), &p(&hn(a, y), &hn(b, y2)), &p(&hn(a, z), &hn(b, z2)));
        }
    }
    for ((x, y), z) in a.vcomp_m_entries() {
        for ((x2, y2), z2) in b.vcomp_m_entries() {
            bl.vcomp_m(&p(&vn(a, x), &vn(b, x2)), &p(&vn(a, y), &vn(b, y2)), &p(&vn(a, z), &vn(b, z2)));
        }
    }
    for ((x, y), z) in a.hcomp_sq_entries() {
        for ((x2, y2), z2) in b.hcomp_sq_entries() {
            bl.hcomp_sq(&p(&sn(a, x), &sn(b, x2)), &p(&sn(a, y), &sn(b, y2)), &p(&sn(a, z), &sn(b, z2)));
        }
    }
    for ((x, y), z) in a.vcomp_sq_entries() {
        for ((x2, y2), z2) in b.vcomp_sq_entries() {
            bl.vcomp_sq(&p(&sn(a, x), &sn(b, x2)), &p(&sn(a, y), &sn(b, y2)), &p(&sn(a, z), &sn(b, z2)));
        }
    }
    bl.build()
}

/// Exchanges the horizontal and vertical structure.
pub fn transpose(d: &DoubleCategory) -> Result<DoubleCategory> {
    let mut b = DoubleCategoryBuilder::new(format!("{}T", d.name()));
    for o in d.objects() {
        b.object(o);
    }
    for h in d.hmors() {
        b.vmor(&h.name, d.object(h.src), d.object(h.tgt));
    }
    for v in d.vmors() {
        b.hmor(&v.name, d.object(v.src), d.object(v.tgt));
    }
    for q in d.squares() {
        b.square(&q.name, &d.vmor(q.left).name, &d.vmor(q.right).name, &d.hmor(q.top).name, &d.hmor(q.bottom).name);
    }
    for (i, o) in d.objects().iter().enumerate() {
        b.id_v(o, &d.hmor(d.id_h(i)).name);
        b.id_h(o, &d.vmor(d.id_v(i)).name);
    }
    for (i, h) in d.hmors().iter().enumerate() {
        b.id_sq(&h.name, &d.square(d.e_sq(i)).name);
    }
    for (i, v) in d.vmors().iter().enumerate() {
        b.e_sq(&v.name, &d.square(d.id_sq(i)).name);
    }
    for ((x, y), z) in d.hcomp_m_entries() {
        b.vcomp_m(&d.hmor(x).name, &d.hmor(y).name, &d.hmor(z).name);
    }
    for ((x, y), z) in d.vcomp_m_entries() {
        b.hcomp_m(&d.vmor(x).name, &d.vmor(y).name, &d.vmor(z).name);
    }
    for ((x, y), z) in d.hcomp_sq_entries() {
        b.vcomp_sq(&d.square(x).name, &d.square(y).name, &d.square(z).name);
    }
    for ((x, y), z) in d.vcomp_sq_entries() {
        b.hcomp_sq(&d.square(x).name, &d.square(y).name, &d.square(z).name);
    }
    b.build()
}
