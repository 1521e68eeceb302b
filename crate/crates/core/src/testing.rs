//! Small helpers shared by the test suites.

use crate::pc::{NormalWord, PcPresentation};

/// Every element of a small group, in exponent-vector order.
pub fn all_elements(pc: &PcPresentation) -> Vec<NormalWord> {
    let n = pc.ngens();
    let p = pc.prime();
    let total = (p as usize).pow(n as u32);
    (0..total)
        .map(|mut k| {
            let mut v = vec![0u32; n];
            for e in v.iter_mut().rev() {
                *e = (k % p as usize) as u32;
                k /= p as usize;
            }
            NormalWord::from_exponents(v)
        })
        .collect()
}
