//! Ideals, congruences, radicals, locality, rank, Boolean structure, and
//! homomorphism search.
//!
//! Two radical notions are used deliberately. The order radical
//! {x : kx <= ¬x for every k} needs no variety data and works on any finite
//! algebra; the equational set {x : ((n+1)x)² = 0} is the radical of an
//! algebra living in a subvariety with invariant n. On such algebras they
//! agree, and for lex algebras the equational test is cross-checked against
//! the closed form "first coordinate zero".

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use crate::algebra::{AlgebraRef, Elem, ExplicitTable};
use crate::error::{Error, Result};

/// Default cap on the number of generator-image assignments tried by
/// homomorphism search.
pub const DEFAULT_HOM_BUDGET: u64 = 1_000_000;

/// An ideal of a finite algebra: contains 0, downward closed, closed
/// under ⊕. Construction validates all three.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ideal {
    pub algebra: AlgebraRef,
    /// Sorted and deduplicated.
    pub members: Vec<Elem>,
}

impl Ideal {
    pub fn new(algebra: &AlgebraRef, members: Vec<Elem>) -> Result<Ideal> {
        let set: BTreeSet<Elem> = members.into_iter().collect();
        for x in &set {
            algebra.check_member(x)?;
        }
        let zero = algebra.zero()?;
        if !set.contains(&zero) {
            return Err(Error::Invalid("ideal must contain 0".into()));
        }
        let carrier = algebra.enumerate()?;
        for x in &set {
            for y in &carrier {
                if algebra.leq(y, x)? && !set.contains(y) {
                    return Err(Error::Invalid(format!(
                        "ideal not downward closed: {} <= {} but {} is missing",
                        y, x, y
                    )));
                }
            }
            for y in &set {
                let s = algebra.oplus(x, y)?;
                if !set.contains(&s) {
                    return Err(Error::Invalid(format!(
                        "ideal not closed under oplus: {} + {} = {} is missing",
                        x, y, s
                    )));
                }
            }
        }
        Ok(Ideal {
            algebra: algebra.clone(),
            members: set.into_iter().collect(),
        })
    }

    pub fn contains(&self, x: &Elem) -> bool {
        self.members.binary_search(x).is_ok()
    }

    pub fn is_zero(&self) -> bool {
        self.members.len() == 1
    }
}

/// The congruence x ~ y iff d(x, y) ∈ I, together with its classes. Class
/// ids are assigned by ascending least representative, so the class of 0 is
/// always id 0.
#[derive(Debug, Clone)]
pub struct Congruence {
    pub algebra: AlgebraRef,
    pub ideal: Ideal,
    pub classes: Vec<Vec<Elem>>,
    class_of: BTreeMap<Elem, u32>,
}

impl Congruence {
    pub fn class_of(&self, x: &Elem) -> Result<u32> {
        self.class_of
            .get(x)
            .copied()
            .ok_or_else(|| Error::Mismatch(format!("{} is not an element here", x)))
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }
}

/// Smallest ideal containing the given generators: downward closure and
/// ⊕-closure to a fixpoint.
pub fn ideal_generated(algebra: &AlgebraRef, gens: &[Elem]) -> Result<Ideal> {
    for g in gens {
        algebra.check_member(g)?;
    }
    let carrier = algebra.enumerate()?;
    let mut set: BTreeSet<Elem> = BTreeSet::new();
    set.insert(algebra.zero()?);
    set.extend(gens.iter().cloned());
    loop {
        let before = set.len();
        let snapshot: Vec<Elem> = set.iter().cloned().collect();
        for x in &snapshot {
            for y in &carrier {
                if algebra.leq(y, x)? {
                    set.insert(y.clone());
                }
            }
            for y in &snapshot {
                set.insert(algebra.oplus(x, y)?);
            }
        }
        if set.len() == before {
            break;
        }
    }
    Ok(Ideal {
        algebra: algebra.clone(),
        members: set.into_iter().collect(),
    })
}

/// Partition a finite algebra by the congruence of an ideal.
pub fn congruence(algebra: &AlgebraRef, ideal: &Ideal) -> Result<Congruence> {
    if ideal.algebra != *algebra {
        return Err(Error::Mismatch("ideal belongs to a different algebra".into()));
    }
    let carrier = algebra.enumerate()?;
    let mut classes: Vec<Vec<Elem>> = Vec::new();
    let mut class_of: BTreeMap<Elem, u32> = BTreeMap::new();
    for x in &carrier {
        let mut found = None;
        for (i, class) in classes.iter().enumerate() {
            let rep = &class[0];
            if ideal.contains(&algebra.dist(x, rep)?) {
                found = Some(i as u32);
                break;
            }
        }
        match found {
            Some(i) => {
                classes[i as usize].push(x.clone());
                class_of.insert(x.clone(), i);
            }
            None => {
                class_of.insert(x.clone(), classes.len() as u32);
                classes.push(vec![x.clone()]);
            }
        }
    }
    // Carrier enumeration ascends, so each class was created at its least
    // member and class ids already ascend by representative.
    Ok(Congruence {
        algebra: algebra.clone(),
        ideal: ideal.clone(),
        classes,
        class_of,
    })
}

/// Quotient A/I as an explicit finite algebra, together with the paired
/// congruence (which carries the projection map).
pub fn quotient(algebra: &AlgebraRef, ideal: &Ideal) -> Result<(AlgebraRef, Congruence)> {
    let cong = congruence(algebra, ideal)?;
    let size = cong.class_count() as u32;
    let mut oplus = vec![0u32; (size as usize) * (size as usize)];
    let mut neg = vec![0u32; size as usize];
    for (i, ci) in cong.classes.iter().enumerate() {
        let rep_i = &ci[0];
        neg[i] = cong.class_of(&algebra.neg(rep_i)?)?;
        for (j, cj) in cong.classes.iter().enumerate() {
            let rep_j = &cj[0];
            oplus[i * size as usize + j] = cong.class_of(&algebra.oplus(rep_i, rep_j)?)?;
        }
    }
    let zero = cong.class_of(&algebra.zero()?)?;
    let one = cong.class_of(&algebra.one()?)?;
    let table = ExplicitTable::new(size, oplus, neg, zero, one)?;
    Ok((AlgebraRef::explicit(table), cong))
}

/// x ⊕ x = x.
pub fn is_boolean(algebra: &AlgebraRef, x: &Elem) -> Result<bool> {
    Ok(algebra.oplus(x, x)? == *x)
}

/// The defining equation of the radical inside a subvariety with invariant
/// n: ((n+1)x)² = 0. On lex algebras whose rank divides n this is
/// cross-checked against the closed form (first coordinate zero); a
/// disagreement would mean a broken kernel and raises an anomaly.
pub fn is_radical_elem(algebra: &AlgebraRef, x: &Elem, n: u64) -> Result<bool> {
    algebra.check_member(x)?;
    let s = algebra.scalar(n + 1, x)?;
    let sq = algebra.odot(&s, &s)?;
    let by_equation = sq == algebra.zero()?;
    if let (AlgebraRef::Lex { rank, .. }, Elem::Lex(m, _)) = (algebra, x) {
        if *rank >= 1 && n.is_multiple_of(*rank) {
            let by_form = *m == 0;
            if by_form != by_equation {
                return Err(Error::Anomaly(format!(
                    "radical closed form disagrees with ((n+1)x)^2 = 0 at {} (n = {})",
                    x, n
                )));
            }
        }
    }
    Ok(by_equation)
}

/// {x : ((n+1)x)² = 0} as a validated ideal. Finite algebras only; on a lex
/// algebra the set is infinite and is characterized by `is_radical_elem`.
pub fn radical_set(algebra: &AlgebraRef, n: u64) -> Result<Ideal> {
    let mut members = Vec::new();
    for x in algebra.enumerate()? {
        if is_radical_elem(algebra, &x, n)? {
            members.push(x);
        }
    }
    Ideal::new(algebra, members)
}

/// Negations of the radical members.
pub fn coradical_set(algebra: &AlgebraRef, n: u64) -> Result<Vec<Elem>> {
    let rad = radical_set(algebra, n)?;
    let mut out: BTreeSet<Elem> = BTreeSet::new();
    for x in &rad.members {
        out.insert(algebra.neg(x)?);
    }
    Ok(out.into_iter().collect())
}

/// Order radical: {x : kx <= ¬x for every k}. Needs no variety invariant.
/// kx stabilizes within |A| steps on a finite algebra, so the scan is
/// exhaustive, not heuristic.
pub fn order_radical(algebra: &AlgebraRef) -> Result<Ideal> {
    let carrier = algebra.enumerate()?;
    let bound = carrier.len() as u64 + 1;
    let mut members = Vec::new();
    for x in &carrier {
        let nx = algebra.neg(x)?;
        let mut inside = true;
        for k in 1..=bound {
            if !algebra.leq(&algebra.scalar(k, x)?, &nx)? {
                inside = false;
                break;
            }
        }
        if inside {
            members.push(x.clone());
        }
    }
    Ideal::new(algebra, members)
}

/// Local: nontrivial, and every element or its negation has finite order.
pub fn is_local(algebra: &AlgebraRef) -> Result<bool> {
    Ok(locality_witness(algebra)?.is_none())
}

/// None when local; otherwise Some(witness): either the algebra is trivial
/// (witness 0) or an element x with ord(x) = ord(¬x) = ∞, the least in
/// enumeration order. Lex algebras of positive rank are always local.
pub fn locality_witness(algebra: &AlgebraRef) -> Result<Option<Elem>> {
    if algebra.is_trivial()? {
        return Ok(Some(algebra.zero()?));
    }
    if let AlgebraRef::Lex { rank, .. } = algebra {
        // (m, h) has finite order for m >= 1; for m = 0 its negation has
        // head rank >= 1. Rank 0 is the trivial case handled above.
        debug_assert!(*rank >= 1);
        return Ok(None);
    }
    for x in algebra.enumerate()? {
        if algebra.ord(&x)?.is_none() && algebra.ord(&algebra.neg(&x)?)?.is_none() {
            return Ok(Some(x));
        }
    }
    Ok(None)
}

/// Simple: local with zero radical. For lex algebras this happens exactly
/// when the coefficient group is trivial.
pub fn is_simple(algebra: &AlgebraRef) -> Result<bool> {
    if let AlgebraRef::Lex { rank, group, .. } = algebra {
        return Ok(*rank >= 1 && group.is_trivial());
    }
    if !is_local(algebra)? {
        return Ok(false);
    }
    Ok(order_radical(algebra)?.is_zero())
}

/// Rank of a local algebra: the k with A/Rad(A) ≅ the k-element-interval
/// chain. Lex algebras read it off the descriptor; finite local algebras
/// count congruence classes of the order radical. Errors on non-local
/// input, including the trivial algebra.
pub fn rank(algebra: &AlgebraRef) -> Result<u64> {
    if let AlgebraRef::Lex { rank, .. } = algebra {
        if *rank == 0 {
            return Err(Error::NotLocal("trivial algebra has no rank".into()));
        }
        return Ok(*rank);
    }
    if let Some(w) = locality_witness(algebra)? {
        return Err(Error::NotLocal(format!("witness {}", w)));
    }
    let rad = order_radical(algebra)?;
    let cong = congruence(algebra, &rad)?;
    Ok(cong.class_count() as u64 - 1)
}

/// Idempotent elements as a subalgebra (they are closed under ⊕ and ¬).
pub fn boolean_skeleton(algebra: &AlgebraRef) -> Result<AlgebraRef> {
    let mut members = Vec::new();
    for x in algebra.enumerate()? {
        if is_boolean(algebra, &x)? {
            members.push(x);
        }
    }
    Ok(AlgebraRef::Subalgebra {
        ambient: Box::new(algebra.clone()),
        members,
    })
}

/// Minimal nonzero Boolean elements.
pub fn boolean_atoms(algebra: &AlgebraRef) -> Result<Vec<Elem>> {
    let skel = boolean_skeleton(algebra)?;
    let members = skel.enumerate()?;
    let zero = algebra.zero()?;
    let mut atoms = Vec::new();
    for b in &members {
        if *b == zero {
            continue;
        }
        let mut minimal = true;
        for c in &members {
            if *c != zero && *c != *b && algebra.leq(c, b)? {
                minimal = false;
                break;
            }
        }
        if minimal {
            atoms.push(b.clone());
        }
    }
    Ok(atoms)
}

/// A homomorphism presented as the full element map of its finite domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hom {
    pub map: BTreeMap<Elem, Elem>,
}

impl Hom {
    pub fn apply(&self, x: &Elem) -> Result<Elem> {
        self.map
            .get(x)
            .cloned()
            .ok_or_else(|| Error::Mismatch(format!("{} is not in the domain", x)))
    }
}

/// A small generating set of a finite algebra: greedily add the least
/// element not yet generated and re-close. The result is deterministic.
pub fn generating_set(algebra: &AlgebraRef) -> Result<Vec<Elem>> {
    let carrier = algebra.enumerate()?;
    let mut gens: Vec<Elem> = Vec::new();
    loop {
        let sub = AlgebraRef::subalgebra(algebra, &gens)?;
        let generated: BTreeSet<Elem> = sub.enumerate()?.into_iter().collect();
        match carrier.iter().find(|x| !generated.contains(x)) {
            None => return Ok(gens),
            Some(x) => gens.push(x.clone()),
        }
    }
}

/// All homomorphisms A -> B for finite A. Every assignment of images to a
/// generating set of A is propagated to a full map by closing under ⊕ and
/// ¬ and then checked against the full operation tables, so the result is
/// exactly the set of homomorphisms, independent of the generating set.
///
/// For chain domains the images of the generator 1/n are exactly the
/// solutions of (n−1)x = ¬x, which is how infinite lex codomains are
/// supported (closed-form solving); see `chain_hom_targets`.
pub fn homs(algebra: &AlgebraRef, target: &AlgebraRef, budget: Option<u64>) -> Result<Vec<Hom>> {
    let budget = budget.unwrap_or(DEFAULT_HOM_BUDGET);
    if algebra.is_trivial()? {
        return if target.is_trivial()? {
            let map = BTreeMap::from([(algebra.zero()?, target.zero()?)]);
            Ok(vec![Hom { map }])
        } else {
            Ok(vec![])
        };
    }
    if let AlgebraRef::Chain { n } = algebra {
        let carrier = algebra.enumerate()?;
        let mut out = Vec::new();
        for x in chain_hom_targets(*n, target, budget)? {
            let mut map = BTreeMap::new();
            for e in &carrier {
                let Elem::Num(j) = e else { unreachable!() };
                map.insert(e.clone(), target.scalar(*j, &x)?);
            }
            out.push(Hom { map });
        }
        return Ok(out);
    }
    let t_carrier = target.enumerate()?;
    let a_carrier = algebra.enumerate()?;
    let gens = generating_set(algebra)?;
    let assignments = (t_carrier.len() as u64)
        .checked_pow(gens.len() as u32)
        .ok_or_else(|| Error::BudgetExceeded("assignment space overflows".into()))?;
    if assignments > budget {
        return Err(Error::BudgetExceeded(format!(
            "{} generator assignments exceed budget {}",
            assignments, budget
        )));
    }
    let index: BTreeMap<Elem, usize> = a_carrier
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, e)| (e, i))
        .collect();
    let mut out = Vec::new();
    let mut choice = vec![0usize; gens.len()];
    loop {
        let images: Vec<Elem> = choice.iter().map(|&i| t_carrier[i].clone()).collect();
        if let Some(hom) = try_extend(algebra, target, &a_carrier, &index, &gens, &images)? {
            out.push(hom);
        }
        // Odometer over generator images, last position fastest.
        let mut pos = gens.len();
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            choice[pos] += 1;
            if choice[pos] < t_carrier.len() {
                break;
            }
            choice[pos] = 0;
        }
    }
}

pub fn hom_count(algebra: &AlgebraRef, target: &AlgebraRef, budget: Option<u64>) -> Result<u64> {
    Ok(homs(algebra, target, budget)?.len() as u64)
}

/// Elements x of the target with (n−1)x = ¬x; each is the image of the
/// generator of the n-chain under exactly one homomorphism. For finite
/// targets this is an exhaustive filter; for lex targets the group equation
/// nx = u is solved exactly.
fn chain_hom_targets(n: u64, target: &AlgebraRef, budget: u64) -> Result<Vec<Elem>> {
    debug_assert!(n >= 1);
    if let AlgebraRef::Lex { rank, group: _, unit } = target {
        // nx = (rank, unit) in ℤ ×_lex G: divisibility must be exact.
        if rank % n != 0 {
            return Ok(vec![]);
        }
        let mut coords = Vec::with_capacity(unit.coords.len());
        for c in &unit.coords {
            let n_big = num_bigint::BigInt::from(n);
            if (c % &n_big) != num_bigint::BigInt::from(0) {
                return Ok(vec![]);
            }
            coords.push(c / &n_big);
        }
        let x = Elem::Lex(rank / n, crate::lgroup::LGroupElem::new(coords));
        debug_assert!(target.contains(&x));
        return Ok(vec![x]);
    }
    let size = target
        .size()
        .ok_or_else(|| Error::UnsupportedDescriptor("infinite non-lex hom target".into()))?;
    if size > budget {
        return Err(Error::BudgetExceeded(format!(
            "{} candidate images exceed budget {}",
            size, budget
        )));
    }
    let mut out = Vec::new();
    for x in target.enumerate()? {
        if target.scalar(n - 1, &x)? == target.neg(&x)? {
            out.push(x);
        }
    }
    Ok(out)
}

fn try_extend(
    algebra: &AlgebraRef,
    target: &AlgebraRef,
    a_carrier: &[Elem],
    index: &BTreeMap<Elem, usize>,
    gens: &[Elem],
    images: &[Elem],
) -> Result<Option<Hom>> {
    let n = a_carrier.len();
    let mut map: Vec<Option<Elem>> = vec![None; n];
    map[index[&algebra.zero()?]] = Some(target.zero()?);
    for (g, im) in gens.iter().zip(images) {
        let gi = index[g];
        if let Some(prev) = &map[gi] {
            if prev != im {
                return Ok(None);
            }
        }
        map[gi] = Some(im.clone());
    }
    loop {
        let mut changed = false;
        for i in 0..n {
            let Some(fi) = map[i].clone() else { continue };
            let ni = index[&algebra.neg(&a_carrier[i])?];
            let fni = target.neg(&fi)?;
            match &map[ni] {
                Some(existing) if *existing != fni => return Ok(None),
                Some(_) => {}
                None => {
                    map[ni] = Some(fni);
                    changed = true;
                }
            }
            for j in 0..n {
                let Some(fj) = map[j].clone() else { continue };
                let k = index[&algebra.oplus(&a_carrier[i], &a_carrier[j])?];
                let fk = target.oplus(&fi, &fj)?;
                match &map[k] {
                    Some(existing) if *existing != fk => return Ok(None),
                    Some(_) => {}
                    None => {
                        map[k] = Some(fk);
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    if map.iter().any(|m| m.is_none()) {
        // Generators failed to reach every element; impossible when `gens`
        // came from `generating_set`, but fail closed.
        return Ok(None);
    }
    let map: BTreeMap<Elem, Elem> = a_carrier
        .iter()
        .cloned()
        .zip(map.into_iter().map(|m| m.unwrap()))
        .collect();
    Ok(Some(Hom { map }))
}
