use std::collections::BTreeMap;

use astro_float::{BigFloat, Consts, RoundingMode};

use super::MetricGroup;
use crate::error::{Error, Result};

const PREC: usize = 128;
const RM: RoundingMode = RoundingMode::ToEven;
const TOLERANCE: f64 = 1e-9;

/// Central charge mod 8 from the normalized Gauss sum `sum_a exp(2 pi i q(a)) / sqrt|A|`.
///
/// Terms are grouped by the value of `q` and the sum is evaluated in 128-bit
/// floating point; the result must land within `1e-9` of one of the eight
/// phases `exp(pi i c / 4)`.
pub fn central_charge_gauss(g: &MetricGroup, budget: u64) -> Result<u8> {
    let order = g.order();
    if order > budget {
        return Err(Error::BudgetExceeded { what: "Gauss sum", needed: order, budget });
    }
    let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
    for x in g.elements() {
        *counts.entry(g.q_num(&x)).or_insert(0) += 1;
    }
    let mut cc = Consts::new().map_err(|e| Error::Verification(format!("float constants: {e:?}")))?;
    let pi = cc.pi(PREC, RM);
    let two_pi = pi.mul(&BigFloat::from_u64(2, PREC), PREC, RM);
    let level = BigFloat::from_u64(g.level(), PREC);
    let mut re = BigFloat::from_u64(0, PREC);
    let mut im = BigFloat::from_u64(0, PREC);
    for (&k, &mult) in &counts {
        let angle = two_pi.mul(&BigFloat::from_u64(k, PREC), PREC, RM).div(&level, PREC, RM);
        let m = BigFloat::from_u64(mult, PREC);
        re = re.add(&angle.cos(PREC, RM, &mut cc).mul(&m, PREC, RM), PREC, RM);
        im = im.add(&angle.sin(PREC, RM, &mut cc).mul(&m, PREC, RM), PREC, RM);
    }
    let norm = BigFloat::from_u64(order, PREC).sqrt(PREC, RM);
    let re = re.div(&norm, PREC, RM);
    let im = im.div(&norm, PREC, RM);
    let tol2 = BigFloat::from_f64(TOLERANCE * TOLERANCE, PREC);
    let quarter = pi.div(&BigFloat::from_u64(4, PREC), PREC, RM);
    let mut hits = Vec::new();
    for c in 0u8..8 {
        let phase = quarter.mul(&BigFloat::from_u64(c as u64, PREC), PREC, RM);
        let dr = re.sub(&phase.cos(PREC, RM, &mut cc), PREC, RM);
        let di = im.sub(&phase.sin(PREC, RM, &mut cc), PREC, RM);
        let d2 = dr.mul(&dr, PREC, RM).add(&di.mul(&di, PREC, RM), PREC, RM);
        if d2 < tol2 {
            hits.push(c);
        }
    }
    match hits.as_slice() {
        [c] => Ok(*c),
        _ => Err(Error::Verification(format!("Gauss sum matches {} candidate phases", hits.len()))),
    }
}
