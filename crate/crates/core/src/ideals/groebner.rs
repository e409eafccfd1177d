use std::collections::BTreeSet;
use std::sync::OnceLock;

use serde::Serialize;

use super::order::MonomialOrder;
use super::IdealError;
use crate::field::FieldValue;
use crate::poly::{Monomial, Poly, RingRef};

pub const DEFAULT_SPAIR_BUDGET: usize = 10_000;

/// Quotients and remainder of multivariate division.
#[derive(Debug, Clone)]
pub struct Division {
    pub quotients: Vec<Poly>,
    pub remainder: Poly,
}

fn lead_of(order: &MonomialOrder, p: &Poly) -> Option<(Monomial, FieldValue)> {
    order.lead(p).map(|(m, c)| (m.clone(), c.clone()))
}

/// Division without the re-expansion check. Ties go to the first divisor
/// whose leading monomial divides.
fn divide_raw(f: &Poly, divisors: &[Poly], leads: &[(Monomial, FieldValue)], order: &MonomialOrder) -> Division {
    let ring = f.ring();
    let mut quotients = vec![Poly::zero(ring); divisors.len()];
    let mut remainder = Poly::zero(ring);
    let mut p = f.clone();
    let inv: Vec<FieldValue> = leads.iter().map(|(_, c)| c.inv().unwrap()).collect();
    while let Some((m, c)) = lead_of(order, &p) {
        let hit = leads.iter().position(|(lm, _)| lm.divides(&m));
        match hit {
            Some(i) => {
                let qm = leads[i].0.quotient_of(&m).unwrap();
                let qc = c.mul(&inv[i]);
                p = p.sub(&divisors[i].mul_term(&qm, &qc));
                quotients[i].add_term(qm, &qc);
            }
            None => {
                let t = Poly::term(ring, m, c);
                p = p.sub(&t);
                remainder = remainder.add(&t);
            }
        }
    }
    Division { quotients, remainder }
}

/// Multivariate division of `f` by `divisors` under `order`. The identity
/// `f = sum q_i g_i + r` is re-expanded before returning.
pub fn divide(f: &Poly, divisors: &[Poly], order: &MonomialOrder) -> Result<Division, IdealError> {
    for g in divisors {
        f.check_ring(g)?;
    }
    let nonzero: Vec<usize> = (0..divisors.len()).filter(|&i| !divisors[i].is_zero()).collect();
    let ds: Vec<Poly> = nonzero.iter().map(|&i| divisors[i].clone()).collect();
    let leads: Vec<_> = ds.iter().map(|g| lead_of(order, g).unwrap()).collect();
    let d = divide_raw(f, &ds, &leads, order);
    let mut quotients = vec![Poly::zero(f.ring()); divisors.len()];
    for (k, &i) in nonzero.iter().enumerate() {
        quotients[i] = d.quotients[k].clone();
    }
    let mut back = d.remainder.clone();
    for (q, g) in quotients.iter().zip(divisors) {
        back = back.add(&q.mul(g));
    }
    if back != *f {
        return Err(IdealError::VerificationFailed("division identity does not re-expand".into()));
    }
    Ok(Division { quotients, remainder: d.remainder })
}

/// A reduced Gröbner basis together with the expression of each basis
/// element in terms of the original generators.
#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    order: MonomialOrder,
    generators: Vec<Poly>,
    basis: Vec<Poly>,
    transform: Vec<Vec<Poly>>,
    spairs: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct GroebnerCertificate {
    pub order: String,
    pub generators: Vec<String>,
    pub basis: Vec<String>,
    pub spairs: usize,
}

impl GroebnerBasis {
    pub fn basis(&self) -> &[Poly] {
        &self.basis
    }

    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    /// Number of S-polynomials formed while computing the basis.
    pub fn spairs(&self) -> usize {
        self.spairs
    }

    /// Row `i` expresses `basis[i]` as a combination of the generators.
    pub fn transform(&self) -> &[Vec<Poly>] {
        &self.transform
    }

    pub fn leads(&self) -> Vec<(Monomial, FieldValue)> {
        self.basis.iter().map(|g| lead_of(&self.order, g).unwrap()).collect()
    }

    pub fn reduce(&self, f: &Poly) -> Division {
        divide_raw(f, &self.basis, &self.leads(), &self.order)
    }

    pub fn normal_form(&self, f: &Poly) -> Poly {
        self.reduce(f).remainder
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.basis.len() == 1 && self.basis[0].is_constant()
    }

    pub fn certificate(&self) -> GroebnerCertificate {
        GroebnerCertificate {
            order: self.order.to_string(),
            generators: self.generators.iter().map(|g| g.to_string()).collect(),
            basis: self.basis.iter().map(|g| g.to_string()).collect(),
            spairs: self.spairs,
        }
    }

    /// Check Buchberger's criterion on every pair and the generator
    /// expressions of every basis element.
    pub fn verify(&self) -> Result<(), IdealError> {
        let leads = self.leads();
        for i in 0..self.basis.len() {
            for j in i + 1..self.basis.len() {
                let s = s_poly(&self.basis[i], &leads[i], &self.basis[j], &leads[j]);
                let r = divide_raw(&s, &self.basis, &leads, &self.order).remainder;
                if !r.is_zero() {
                    return Err(IdealError::VerificationFailed(format!(
                        "S-polynomial of basis elements {i},{j} has remainder {r}"
                    )));
                }
            }
        }
        for (g, row) in self.basis.iter().zip(&self.transform) {
            let mut acc = Poly::zero(g.ring());
            for (c, h) in row.iter().zip(&self.generators) {
                acc = acc.add(&c.mul(h));
            }
            if acc != *g {
                return Err(IdealError::VerificationFailed(format!("basis element {g} is not a generator combination")));
            }
        }
        Ok(())
    }
}

fn s_poly(f: &Poly, lf: &(Monomial, FieldValue), g: &Poly, lg: &(Monomial, FieldValue)) -> Poly {
    let l = lf.0.lcm(&lg.0);
    let a = lf.0.quotient_of(&l).unwrap();
    let b = lg.0.quotient_of(&l).unwrap();
    f.mul_term(&a, &lf.1.inv().unwrap()).sub(&g.mul_term(&b, &lg.1.inv().unwrap()))
}

fn combine(rows: &[Vec<Poly>], coeffs: &[(usize, Poly)], ring: &RingRef, width: usize) -> Vec<Poly> {
    let mut out = vec![Poly::zero(ring); width];
    for (i, c) in coeffs {
        if c.is_zero() {
            continue;
        }
        for (k, t) in rows[*i].iter().enumerate() {
            if !t.is_zero() {
                out[k] = out[k].add(&c.mul(t));
            }
        }
    }
    out
}

/// Generators of an ideal with a lazily computed Gröbner basis.
#[derive(Debug)]
pub struct IdealBasis {
    ring: RingRef,
    generators: Vec<Poly>,
    order: MonomialOrder,
    cache: OnceLock<GroebnerBasis>,
}

impl Clone for IdealBasis {
    fn clone(&self) -> IdealBasis {
        let cache = OnceLock::new();
        if let Some(g) = self.cache.get() {
            let _ = cache.set(g.clone());
        }
        IdealBasis { ring: self.ring.clone(), generators: self.generators.clone(), order: self.order.clone(), cache }
    }
}

impl IdealBasis {
    pub fn new(ring: &RingRef, generators: Vec<Poly>, order: MonomialOrder) -> Result<IdealBasis, IdealError> {
        for g in &generators {
            if g.ring() != ring {
                return Err(IdealError::RingMismatch(format!("generator {g} not in {ring}")));
            }
        }
        Ok(IdealBasis { ring: ring.clone(), generators, order, cache: OnceLock::new() })
    }

    pub fn with_default_order(ring: &RingRef, generators: Vec<Poly>) -> Result<IdealBasis, IdealError> {
        IdealBasis::new(ring, generators, MonomialOrder::default_for(ring))
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    /// The cached basis, computing it first if needed.
    pub fn groebner(&self) -> Result<&GroebnerBasis, IdealError> {
        self.groebner_with_budget(DEFAULT_SPAIR_BUDGET)
    }

    pub fn groebner_with_budget(&self, budget: usize) -> Result<&GroebnerBasis, IdealError> {
        if let Some(g) = self.cache.get() {
            return Ok(g);
        }
        let g = buchberger(&self.generators, &self.order, budget)?;
        let _ = self.cache.set(g);
        Ok(self.cache.get().unwrap())
    }
}

/// Buchberger's algorithm with the normal selection strategy and the
/// product and chain criteria. Returns a verified reduced basis.
pub fn buchberger(generators: &[Poly], order: &MonomialOrder, budget: usize) -> Result<GroebnerBasis, IdealError> {
    let ring = match generators.first() {
        Some(g) => g.ring().clone(),
        None => {
            return Ok(GroebnerBasis {
                order: order.clone(),
                generators: Vec::new(),
                basis: Vec::new(),
                transform: Vec::new(),
                spairs: 0,
            })
        }
    };
    for g in generators {
        g.check_ring(&generators[0])?;
    }
    let width = generators.len();
    let mut basis: Vec<Poly> = Vec::new();
    let mut rows: Vec<Vec<Poly>> = Vec::new();
    for (k, g) in generators.iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        let mut row = vec![Poly::zero(&ring); width];
        row[k] = Poly::one(&ring);
        basis.push(g.clone());
        rows.push(row);
    }
    let mut leads: Vec<(Monomial, FieldValue)> = basis.iter().map(|g| lead_of(order, g).unwrap()).collect();
    let mut pending: BTreeSet<(usize, usize)> = BTreeSet::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pending.insert((i, j));
        }
    }
    let mut spairs = 0usize;
    while !pending.is_empty() {
        // Normal strategy: smallest lcm first, ties by index.
        let &(i, j) = pending
            .iter()
            .min_by(|a, b| {
                let la = leads[a.0].0.lcm(&leads[a.1].0);
                let lb = leads[b.0].0.lcm(&leads[b.1].0);
                order.cmp(&la, &lb).then(a.cmp(b))
            })
            .unwrap();
        pending.remove(&(i, j));
        let l = leads[i].0.lcm(&leads[j].0);
        if leads[i].0.coprime(&leads[j].0) {
            continue;
        }
        let key = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && leads[k].0.divides(&l)
                && !pending.contains(&key(i, k))
                && !pending.contains(&key(j, k))
        });
        if chain {
            continue;
        }
        spairs += 1;
        if spairs > budget {
            return Err(IdealError::BudgetExceeded { budget });
        }
        let a = leads[i].0.quotient_of(&l).unwrap();
        let b = leads[j].0.quotient_of(&l).unwrap();
        let ca = leads[i].1.inv().unwrap();
        let cb = leads[j].1.inv().unwrap();
        let s = basis[i].mul_term(&a, &ca).sub(&basis[j].mul_term(&b, &cb));
        let d = divide_raw(&s, &basis, &leads, order);
        if d.remainder.is_zero() {
            continue;
        }
        let mut coeffs = vec![(i, Poly::term(&ring, a, ca)), (j, Poly::term(&ring, b, cb.neg()))];
        for (k, q) in d.quotients.iter().enumerate() {
            if !q.is_zero() {
                coeffs.push((k, q.neg()));
            }
        }
        let row = combine(&rows, &coeffs, &ring, width);
        let n = basis.len();
        for k in 0..n {
            pending.insert((k, n));
        }
        leads.push(lead_of(order, &d.remainder).unwrap());
        basis.push(d.remainder);
        rows.push(row);
    }
    let gb = reduce_basis(&ring, generators, basis, rows, order, spairs);
    gb.verify()?;
    Ok(gb)
}

fn reduce_basis(
    ring: &RingRef,
    generators: &[Poly],
    basis: Vec<Poly>,
    rows: Vec<Vec<Poly>>,
    order: &MonomialOrder,
    spairs: usize,
) -> GroebnerBasis {
    let width = generators.len();
    let leads: Vec<Monomial> = basis.iter().map(|g| lead_of(order, g).unwrap().0).collect();
    // Keep elements whose lead is not divisible by another kept lead.
    let mut keep: Vec<usize> = Vec::new();
    for i in 0..basis.len() {
        let redundant = (0..basis.len()).any(|j| {
            j != i && leads[j].divides(&leads[i]) && (leads[j] != leads[i] || j < i)
        });
        if !redundant {
            keep.push(i);
        }
    }
    let mut b: Vec<Poly> = keep.iter().map(|&i| basis[i].clone()).collect();
    let mut r: Vec<Vec<Poly>> = keep.iter().map(|&i| rows[i].clone()).collect();
    for k in 0..b.len() {
        let others: Vec<usize> = (0..b.len()).filter(|&x| x != k).collect();
        let ds: Vec<Poly> = others.iter().map(|&x| b[x].clone()).collect();
        let ls: Vec<_> = ds.iter().map(|g| lead_of(order, g).unwrap()).collect();
        let d = divide_raw(&b[k], &ds, &ls, order);
        let mut coeffs = vec![(k, Poly::one(ring))];
        for (q, &x) in d.quotients.iter().zip(&others) {
            if !q.is_zero() {
                coeffs.push((x, q.neg()));
            }
        }
        let row = combine(&r, &coeffs, ring, width);
        let lc_inv = lead_of(order, &d.remainder).unwrap().1.inv().unwrap();
        b[k] = d.remainder.scale(&lc_inv);
        r[k] = row.iter().map(|p| p.scale(&lc_inv)).collect();
    }
    let mut idx: Vec<usize> = (0..b.len()).collect();
    idx.sort_by(|&x, &y| order.cmp(&lead_of(order, &b[x]).unwrap().0, &lead_of(order, &b[y]).unwrap().0));
    GroebnerBasis {
        order: order.clone(),
        generators: generators.to_vec(),
        basis: idx.iter().map(|&i| b[i].clone()).collect(),
        transform: idx.iter().map(|&i| r[i].clone()).collect(),
        spairs,
    }
}

/// Outcome of an ideal-membership test.
#[derive(Debug, Clone)]
pub enum Membership {
    /// `f = sum cofactors[i] * generators[i]`, re-expanded and checked.
    Member { cofactors: Vec<Poly>, verified: bool },
    NotMember { remainder: Poly },
}

impl Membership {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member { verified: true, .. })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct MembershipCertificate {
    pub element: String,
    pub generators: Vec<String>,
    pub cofactors: Vec<String>,
}

pub fn membership_certificate(f: &Poly, ideal: &IdealBasis, m: &Membership) -> Option<MembershipCertificate> {
    match m {
        Membership::Member { cofactors, .. } => Some(MembershipCertificate {
            element: f.to_string(),
            generators: ideal.generators().iter().map(|g| g.to_string()).collect(),
            cofactors: cofactors.iter().map(|c| c.to_string()).collect(),
        }),
        Membership::NotMember { .. } => None,
    }
}

/// Decide `f ∈ ideal`; on success returns cofactors with respect to the
/// original generators.
pub fn ideal_membership(f: &Poly, ideal: &IdealBasis) -> Result<Membership, IdealError> {
    if f.ring() != ideal.ring() {
        return Err(IdealError::RingMismatch(format!("{} not in {}", f, ideal.ring())));
    }
    let gb = ideal.groebner()?;
    let d = gb.reduce(f);
    if !d.remainder.is_zero() {
        return Ok(Membership::NotMember { remainder: d.remainder });
    }
    let ring = f.ring();
    let mut cofactors = vec![Poly::zero(ring); ideal.generators().len()];
    for (q, row) in d.quotients.iter().zip(gb.transform()) {
        if q.is_zero() {
            continue;
        }
        for (k, t) in row.iter().enumerate() {
            cofactors[k] = cofactors[k].add(&q.mul(t));
        }
    }
    let mut back = Poly::zero(ring);
    for (c, g) in cofactors.iter().zip(ideal.generators()) {
        back = back.add(&c.mul(g));
    }
    Ok(Membership::Member { verified: back == *f, cofactors })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::ideals::order::OrderKind;
    use crate::poly::Ring;

    #[test]
    fn division_prefers_first_divisor() {
        let r = Ring::new(Field::Rationals, &["x", "y"]).unwrap();
        let o = MonomialOrder::new(&r, OrderKind::GradedLex, &["x", "y"]).unwrap();
        let f = Poly::parse(&r, "x^2*y + x*y^2 + y^2").unwrap();
        let g1 = Poly::parse(&r, "x*y - 1").unwrap();
        let g2 = Poly::parse(&r, "y^2 - 1").unwrap();
        let d = divide(&f, &[g1, g2], &o).unwrap();
        assert_eq!(d.quotients[0].to_string(), "x + y");
        assert_eq!(d.quotients[1].to_string(), "1");
        assert_eq!(d.remainder.to_string(), "x + y + 1");
    }

    #[test]
    fn twisted_cubic() {
        let r = Ring::new(Field::Rationals, &["x", "y", "z"]).unwrap();
        let o = MonomialOrder::new(&r, OrderKind::Lex, &["x", "y", "z"]).unwrap();
        let gens = vec![Poly::parse(&r, "x^2 - y").unwrap(), Poly::parse(&r, "x^3 - z").unwrap()];
        let gb = buchberger(&gens, &o, 100).unwrap();
        let shown: Vec<String> = gb.basis().iter().map(|g| g.to_string()).collect();
        assert_eq!(shown, vec!["y^3 - z^2", "x*z - y^2", "x*y - z", "x^2 - y"]);
    }

    #[test]
    fn membership_with_cofactors() {
        let r = Ring::new(Field::prime(3).unwrap(), &["x", "y"]).unwrap();
        let ideal = IdealBasis::with_default_order(
            &r,
            vec![Poly::parse(&r, "x^2 + y").unwrap(), Poly::parse(&r, "x*y - 1").unwrap()],
        )
        .unwrap();
        let f = Poly::parse(&r, "(x^2 + y)*(x + 1) + y*(x*y - 1)").unwrap();
        assert!(ideal_membership(&f, &ideal).unwrap().is_member());
        let g = Poly::parse(&r, "x + 1").unwrap();
        assert!(!ideal_membership(&g, &ideal).unwrap().is_member());
    }

    #[test]
    fn budget_is_enforced() {
        let r = Ring::new(Field::Rationals, &["x", "y", "z"]).unwrap();
        let o = MonomialOrder::default_for(&r);
        let gens = vec![
            Poly::parse(&r, "x^2*y - z^2").unwrap(),
            Poly::parse(&r, "x*y^2 - z").unwrap(),
            Poly::parse(&r, "x*y*z - 1").unwrap(),
        ];
        assert!(matches!(buchberger(&gens, &o, 1), Err(IdealError::BudgetExceeded { budget: 1 })));
    }
}
