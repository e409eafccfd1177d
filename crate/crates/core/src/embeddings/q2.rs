//! `Q2` as the complement of the diagonal in `P1 x P1`, checked on charts.

use super::{q2_relation, q2_ring, ring, CheckedIdentity, EmbeddingError};
use crate::field::Field;
use crate::ideals::IdealBasis;
use crate::poly::Poly;

/// Checks `psi o rho = id` on both charts of `Q2` and `rho o psi = id` on
/// `P1 x P1 minus the diagonal`, with denominators cleared. Identities on
/// `Q2` are reduced modulo its ideal.
pub fn q2_chart_isomorphism_check(field: &Field) -> Result<Vec<CheckedIdentity>, EmbeddingError> {
    let r = q2_ring(field);
    let q2 = IdealBasis::with_default_order(&r, vec![q2_relation(&r)])?;
    let gb = q2.groebner()?;
    let p = |s: &str| Poly::parse(&r, s).expect("fixed expression");
    let mut out = Vec::new();

    // rho on z != 0 is ([y:z],[z:x]); on z != -1 it is ([z+1:x],[y:z+1]).
    let charts = [("z != 0", ["y", "z", "z", "x"], "z"), ("z != -1", ["z + 1", "x", "y", "z + 1"], "z + 1")];
    for (name, [u0, u1, v0, v1], nonzero) in charts {
        let (u0, u1, v0, v1) = (p(u0), p(u1), p(v0), p(v1));
        let d = u0.mul(&v1).sub(&u1.mul(&v0));
        out.push(CheckedIdentity::new(
            format!("chart {name}: u0*v1 - u1*v0 = {nonzero} on Q2"),
            &gb.normal_form(&d.sub(&p(nonzero))),
        ));
        let nums = [u1.mul(&v1), u0.mul(&v0), u1.mul(&v0)];
        for (num, var) in nums.iter().zip(["x", "y", "z"]) {
            let residual = gb.normal_form(&num.sub(&p(var).mul(&d)));
            out.push(CheckedIdentity::new(format!("chart {name}: psi o rho recovers {var}"), &residual));
        }
    }

    let pr = ring(field, &["u0", "u1", "v0", "v1"]);
    let g = |s: &str| Poly::parse(&pr, s).expect("fixed expression");
    let d = g("u0*v1 - u1*v0");
    // psi = (X, Y, Z) / D.
    let (x, y, z) = (g("u1*v1"), g("u0*v0"), g("u1*v0"));
    let on_q2 = x.mul(&y).sub(&z.mul(&z.add(&d)));
    out.push(CheckedIdentity::new("psi lands on Q2 (times D^2)", &on_q2));
    let (u0, u1, v0, v1) = (g("u0"), g("u1"), g("v0"), g("v1"));
    let zp1 = z.add(&d);
    let proj = [
        ("rho o psi, chart z != 0, first factor", y.mul(&u1).sub(&z.mul(&u0))),
        ("rho o psi, chart z != 0, second factor", z.mul(&v1).sub(&x.mul(&v0))),
        ("rho o psi, chart z != -1, first factor", zp1.mul(&u1).sub(&x.mul(&u0))),
        ("rho o psi, chart z != -1, second factor", y.mul(&v1).sub(&zp1.mul(&v0))),
    ];
    for (label, res) in proj {
        out.push(CheckedIdentity::new(label, &res));
    }
    Ok(out)
}

/// For `p` of degree `d`, the closure `nu_hat_p([u:v]) = ([u:v], [uP : u^(d+1) + vP])`
/// with `P(u,v) = u^d p(v/u)` meets the diagonal only where
/// `u (u^(d+1) + vP) - v u P = u^(d+2)` vanishes. Also checks that on `u = 1`
/// it agrees with `rho o nu_p = ([1:t], [p : 1 + tp])`.
pub fn nu_hat_check(p: &Poly) -> Result<Vec<CheckedIdentity>, EmbeddingError> {
    let field = p.field().clone();
    let ti = p
        .ring()
        .index_of("t")
        .filter(|_| p.ring().nvars() == 1)
        .ok_or_else(|| EmbeddingError::NotOfRequiredForm("p must be a polynomial in t".into()))?;
    let d = p.total_degree().finite().unwrap_or(0);
    let uv = ring(&field, &["u", "v"]);
    let u = Poly::var(&uv, "u")?;
    let v = Poly::var(&uv, "v")?;
    // Homogenize: each t^k c becomes c v^k u^(d-k).
    let mut hp = Poly::zero(&uv);
    for (m, c) in p.terms() {
        let k = m.exps()[ti];
        hp = hp.add(&v.pow(k).mul(&u.pow(d - k)).scale(c));
    }
    let second = [u.mul(&hp), u.pow(d + 1).add(&v.mul(&hp))];
    let diag = u.mul(&second[1]).sub(&v.mul(&second[0]));
    let mut out = vec![CheckedIdentity::new(
        format!("nu_hat diagonal form for deg p = {d} equals u^{}", d + 2),
        &diag.sub(&u.pow(d + 2)),
    )];
    let tr = p.ring();
    let t = Poly::var(tr, "t")?;
    let chart = [Poly::one(tr), t.clone()];
    let dehom: Vec<Poly> = second.iter().map(|s| s.compose(&chart)).collect::<Result<_, _>>()?;
    let expected = [p.clone(), Poly::one(tr).add(&t.mul(p))];
    let cross = dehom[0].mul(&expected[1]).sub(&dehom[1].mul(&expected[0]));
    out.push(CheckedIdentity::new("nu_hat agrees with rho o nu_p on u = 1", &cross));
    Ok(out)
}
