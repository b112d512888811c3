//! Finite families of 3-arrays closed under a fish product.

use super::fish::{biunit_pair_by_fish, entry_key, fish, fish_units_check, index_by_entries, partial_identity, tridentity, FishVariant};
use super::table::{TableVerdict, TernaryTable};
use super::TernaryError;
use crate::array::Array;

/// Largest carrier `heapoid_check` and `close_under_fish` will handle.
pub const CARRIER_CAP: usize = 64;

#[derive(Debug, Clone, PartialEq)]
pub struct HeapoidReport {
    pub size: usize,
    /// the semiheap law on the induced table
    pub semiheapoid: TableVerdict,
    /// for each element, the first carrier element completing a biunit pair
    pub partners: Vec<Option<usize>>,
    pub heapoid: bool,
    /// every element is its own partner
    pub malcev: bool,
    /// `None` when the variant or carrier leaves the unit equations undefined
    pub fish_category: Option<bool>,
    pub table: TernaryTable,
}

fn same_constellation(carrier: &[Array]) -> Result<(), TernaryError> {
    let first = carrier.first().ok_or_else(|| TernaryError::InvalidTable("empty carrier".into()))?;
    for a in carrier {
        if a.order() != 3 {
            return Err(TernaryError::NotOrderThree(a.order()));
        }
        if a.axes() != first.axes() || a.semiring() != first.semiring() {
            return Err(TernaryError::InvalidTable("carrier arrays must share axes and semiring".into()));
        }
    }
    Ok(())
}

/// The fish table of a carrier; fails with the first triple whose product
/// leaves it.
pub fn carrier_table(carrier: &[Array], v: FishVariant) -> Result<TernaryTable, TernaryError> {
    same_constellation(carrier)?;
    let n = carrier.len();
    if n > CARRIER_CAP {
        return Err(TernaryError::TooLarge {
            what: "carrier",
            cap: CARRIER_CAP,
        });
    }
    let index = index_by_entries(carrier);
    if index.len() != n {
        return Err(TernaryError::InvalidTable("carrier has repeated arrays".into()));
    }
    let mut table = Vec::with_capacity(n * n * n);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let p = fish(&carrier[a], &carrier[b], &carrier[c], v)?;
                let k = index.get(&entry_key(&p)).ok_or(TernaryError::NotClosed([a, b, c]))?;
                table.push(*k as u32);
            }
        }
    }
    TernaryTable::custom(n, table, None)
}

/// Semiheapoid, heapoid, Malcev and fish-category checks on a closed
/// carrier.
pub fn heapoid_check(carrier: &[Array], v: FishVariant) -> Result<HeapoidReport, TernaryError> {
    let table = carrier_table(carrier, v)?;
    let semiheapoid = table.check_semiheap();
    let mut partners = Vec::with_capacity(carrier.len());
    for e in carrier {
        let mut found = None;
        // try the element itself first so Malcev carriers report self-pairs
        let order = std::iter::once(e).chain(carrier.iter().filter(|x| *x != e));
        for e2 in order {
            if biunit_pair_by_fish(e, e2, v)? {
                found = carrier.iter().position(|x| x == e2);
                break;
            }
        }
        partners.push(found);
    }
    let heapoid = semiheapoid.passed() && partners.iter().all(Option::is_some);
    let malcev = heapoid && partners.iter().enumerate().all(|(k, p)| *p == Some(k));
    Ok(HeapoidReport {
        size: carrier.len(),
        semiheapoid,
        partners,
        heapoid,
        malcev,
        fish_category: fish_category(carrier, v)?,
        table,
    })
}

/// Tridentity and partial identity present, and the unit equations hold for
/// every element. Defined for regular carriers under `η_IJK`.
fn fish_category(carrier: &[Array], v: FishVariant) -> Result<Option<bool>, TernaryError> {
    let first = &carrier[0];
    let n = &first.axes()[0];
    if v != FishVariant::IJK || first.axes().iter().any(|x| x != n) {
        return Ok(None);
    }
    let s = first.semiring();
    let t = tridentity(n, s)?;
    let u = partial_identity(n, s)?;
    if !carrier.contains(&t) || !carrier.contains(&u) {
        return Ok(Some(false));
    }
    for a in carrier {
        if !fish_units_check(a)?.passed() {
            return Ok(Some(false));
        }
    }
    Ok(Some(true))
}

/// The smallest superset of `generators` closed under `v`, if it has at
/// most `cap` elements.
pub fn close_under_fish(generators: &[Array], v: FishVariant, cap: usize) -> Result<Vec<Array>, TernaryError> {
    same_constellation(generators)?;
    let mut carrier: Vec<Array> = Vec::new();
    let mut index = std::collections::BTreeMap::new();
    for g in generators {
        if index.insert(entry_key(g), carrier.len()).is_none() {
            carrier.push(g.clone());
        }
    }
    // products involving at least one element at position >= done are new
    let mut done = 0;
    while done < carrier.len() {
        let end = carrier.len();
        for a in 0..end {
            for b in 0..end {
                for c in 0..end {
                    if a < done && b < done && c < done {
                        continue;
                    }
                    let p = fish(&carrier[a], &carrier[b], &carrier[c], v)?;
                    let key = entry_key(&p);
                    if let std::collections::btree_map::Entry::Vacant(e) = index.entry(key) {
                        if carrier.len() == cap {
                            return Err(TernaryError::TooLarge { what: "closure", cap });
                        }
                        e.insert(carrier.len());
                        carrier.push(p);
                    }
                }
            }
        }
        done = end;
    }
    Ok(carrier)
}
