//! Algebraic laws, engine cross-checks and the doubling relations, checked on
//! basis elements and on seeded random dense elements.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::report::{Property, PropertyReport, Witness};
use super::table::{build_table, build_table_by_doubling, MultiplicationTable, DEFAULT_TABLE_CAP};
use crate::algebra::{basis_from_generators, AlgebraSignature, Element, Engine, SignatureKind};
use crate::error::{Error, Result};
use crate::twist::BasisIndex;

/// Largest level whose basis triples are enumerated.
pub const EXHAUSTIVE_TRIPLE_LEVEL: u32 = 5;

/// Largest level whose basis pairs are enumerated.
pub const EXHAUSTIVE_PAIR_LEVEL: u32 = 8;

/// Coefficients of random dense elements are drawn from `-RANDOM_BOUND..=RANDOM_BOUND`.
pub const RANDOM_BOUND: i64 = 5;

pub const ALGEBRA_LAWS: [Property; 6] = [
    Property::Commutativity,
    Property::Associativity,
    Property::LeftAlternativity,
    Property::RightAlternativity,
    Property::Flexibility,
    Property::NormMultiplicativity,
];

pub const RELATIONS: [Property; 11] = [
    Property::RelationGSquared,
    Property::RelationGConjugate,
    Property::RelationAGb,
    Property::RelationAgB,
    Property::RelationGaBg,
    Property::RelationAg,
    Property::RelationGa,
    Property::RelationGaB,
    Property::RelationABg,
    Property::RelationGaGb,
    Property::RelationAgBg,
];

/// Whether a law holds in every Cayley-Dickson algebra of the given level:
/// commutative up to 1, associative up to 2, alternative and composition
/// up to 3, flexible always.
pub fn law_expected(property: Property, level: u32) -> bool {
    match property {
        Property::Commutativity => level <= 1,
        Property::Associativity => level <= 2,
        Property::LeftAlternativity | Property::RightAlternativity | Property::NormMultiplicativity => level <= 3,
        _ => true,
    }
}

fn sample_engine(sig: &AlgebraSignature) -> Engine {
    if sig.has_closed_form() {
        Engine::Twist
    } else {
        Engine::Doubling
    }
}

fn sign_table(sig: AlgebraSignature) -> Result<MultiplicationTable> {
    if sig.has_closed_form() {
        build_table(sig, DEFAULT_TABLE_CAP)
    } else {
        build_table_by_doubling(sig)
    }
}

/// `(e_a e_b) e_c - e_a (e_b e_c)` as a multiple of `e_{a^b^c}`: one of -2, 0, 2.
fn associator(t: &MultiplicationTable, a: u32, b: u32, c: u32) -> i8 {
    let ab = t.get(a, b);
    let left = ab.sign * t.get(ab.index.0, c).sign;
    let bc = t.get(b, c);
    let right = bc.sign * t.get(a, bc.index.0).sign;
    left.as_i8() - right.as_i8()
}

fn basis(sig: AlgebraSignature, i: u32) -> Result<Element> {
    Element::basis(sig, BasisIndex(i))
}

/// `e_i + e_j`, or `e_i` alone when the indices coincide.
fn basis_sum(sig: AlgebraSignature, i: u32, j: u32) -> Result<Element> {
    if i == j {
        basis(sig, i)
    } else {
        basis(sig, i)?.checked_add(&basis(sig, j)?)
    }
}

/// True when the elements violate the law. Element order:
/// commutativity `[x, y]`, associativity `[x, y, z]`, both alternative laws,
/// flexibility and norm multiplicativity `[x, y]`.
pub fn law_violated(property: Property, elements: &[Element], engine: Engine) -> Result<bool> {
    let mul = |x: &Element, y: &Element| x.mul_with(y, engine);
    let arity = if property == Property::Associativity { 3 } else { 2 };
    if elements.len() != arity {
        return Err(Error::Unsupported(format!(
            "{} takes {arity} elements, got {}",
            property.name(),
            elements.len()
        )));
    }
    let (x, y) = (&elements[0], &elements[1]);
    let differ = |p: Element, q: Element| p.try_eq(&q).map(|eq| !eq);
    match property {
        Property::Commutativity => differ(mul(x, y)?, mul(y, x)?),
        Property::Associativity => {
            let z = &elements[2];
            differ(mul(&mul(x, y)?, z)?, mul(x, &mul(y, z)?)?)
        }
        Property::LeftAlternativity => differ(mul(&mul(x, x)?, y)?, mul(x, &mul(x, y)?)?),
        Property::RightAlternativity => differ(mul(&mul(y, x)?, x)?, mul(y, &mul(x, x)?)?),
        Property::Flexibility => differ(mul(x, &mul(y, x)?)?, mul(&mul(x, y)?, x)?),
        Property::NormMultiplicativity => Ok(mul(x, y)?.norm()? != x.norm()? * y.norm()?),
        other => Err(Error::Unsupported(format!("{} is not an algebra law", other.name()))),
    }
}

/// Records a witness after confirming it with the doubling engine.
fn fail_confirmed(report: &mut PropertyReport, witness: Witness) -> Result<()> {
    if !report.holds {
        return Ok(());
    }
    if !law_violated(report.property, &witness.elements, Engine::Doubling)? {
        return Err(Error::Invariant(format!(
            "{} counterexample {:?} does not reproduce under the doubling engine",
            report.property.name(),
            witness.indices
        )));
    }
    report.fail(witness);
    Ok(())
}

/// Commutativity, associativity, both alternative laws, flexibility and norm
/// multiplicativity. Basis pairs and triples are enumerated up to
/// [`EXHAUSTIVE_PAIR_LEVEL`] and [`EXHAUSTIVE_TRIPLE_LEVEL`]; then `samples`
/// random dense triples are tried. The alternative and flexible laws are
/// checked on basis triples in linearized form, since basis elements satisfy
/// them in every level. Each report keeps the first counterexample, confirmed
/// by the doubling engine.
pub fn verify_algebra_laws(sig: AlgebraSignature, samples: u64, seed: u64) -> Result<Vec<PropertyReport>> {
    let level = sig.level();
    let mut reports: Vec<PropertyReport> = ALGEBRA_LAWS
        .iter()
        .map(|&p| PropertyReport::new(p, sig).expect(law_expected(p, level)).seeded(seed))
        .collect();

    if level <= EXHAUSTIVE_PAIR_LEVEL {
        let table = sign_table(sig)?;
        let dim = sig.dim() as u32;
        let comm = &mut reports[0];
        for a in 0..dim {
            for b in 0..dim {
                comm.checked += 1;
                if table.get(a, b) != table.get(b, a) {
                    let w = Witness::indices([a, b]).with_elements([basis(sig, a)?, basis(sig, b)?]);
                    fail_confirmed(comm, w)?;
                }
            }
        }
        if level <= EXHAUSTIVE_TRIPLE_LEVEL {
            check_basis_triples(&table, &mut reports[1..5])?;
        }
    }

    let engine = sample_engine(&sig);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let x = Element::random_integer(sig, &mut rng, RANDOM_BOUND)?;
        let y = Element::random_integer(sig, &mut rng, RANDOM_BOUND)?;
        let z = Element::random_integer(sig, &mut rng, RANDOM_BOUND)?;
        for r in reports.iter_mut() {
            r.checked += 1;
            if !r.holds {
                continue;
            }
            let elements = if r.property == Property::Associativity {
                vec![x.clone(), y.clone(), z.clone()]
            } else {
                vec![x.clone(), y.clone()]
            };
            if law_violated(r.property, &elements, engine)? {
                fail_confirmed(r, Witness::elements(elements))?;
            }
        }
    }
    Ok(reports)
}

/// `reports` holds associativity, left and right alternativity, flexibility.
fn check_basis_triples(table: &MultiplicationTable, reports: &mut [PropertyReport]) -> Result<()> {
    let sig = table.signature();
    let dim = sig.dim() as u32;
    for a in 0..dim {
        for b in 0..dim {
            for c in 0..dim {
                let abc = associator(table, a, b, c);
                for r in reports.iter_mut() {
                    r.checked += 1;
                    if !r.holds {
                        continue;
                    }
                    let witness = match r.property {
                        Property::Associativity if abc != 0 => {
                            vec![basis(sig, a)?, basis(sig, b)?, basis(sig, c)?]
                        }
                        // (x, x, y) with x = e_a + e_b, y = e_c
                        Property::LeftAlternativity if abc + associator(table, b, a, c) != 0 => {
                            vec![basis_sum(sig, a, b)?, basis(sig, c)?]
                        }
                        // (y, x, x) with x = e_a + e_b, y = e_c
                        Property::RightAlternativity
                            if associator(table, c, a, b) + associator(table, c, b, a) != 0 =>
                        {
                            vec![basis_sum(sig, a, b)?, basis(sig, c)?]
                        }
                        // (x, y, x) with x = e_a + e_c, y = e_b
                        Property::Flexibility if abc + associator(table, c, b, a) != 0 => {
                            vec![basis_sum(sig, a, c)?, basis(sig, b)?]
                        }
                        _ => continue,
                    };
                    fail_confirmed(r, Witness::indices([a, b, c]).with_elements(witness))?;
                }
            }
        }
    }
    Ok(())
}

/// Cross-checks of the two engines and of conjugation and norm:
/// closed-form vs doubling on all basis pairs (up to [`EXHAUSTIVE_PAIR_LEVEL`])
/// and on `samples` random dense pairs, generator anchoring of every basis
/// element, and on random elements the involution laws and scalarity of
/// `x conj(x) = conj(x) x`. The engine comparisons are omitted for
/// signatures without a closed form.
pub fn verify_engines(sig: AlgebraSignature, samples: u64, seed: u64) -> Result<Vec<PropertyReport>> {
    let level = sig.level();
    let dim = sig.dim() as u32;
    let mut reports = Vec::new();

    if sig.has_closed_form() {
        let mut r = PropertyReport::new(Property::EnginesAgreeOnBasis, sig);
        if level <= EXHAUSTIVE_PAIR_LEVEL {
            let closed = build_table(sig, DEFAULT_TABLE_CAP)?;
            let doubled = build_table_by_doubling(sig)?;
            for a in 0..dim {
                for b in 0..dim {
                    r.check(closed.get(a, b) == doubled.get(a, b), || Witness::indices([a, b]));
                }
            }
        }
        reports.push(r);

        let mut r = PropertyReport::new(Property::EnginesAgreeOnDense, sig).seeded(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let x = Element::random_integer(sig, &mut rng, RANDOM_BOUND)?;
            let y = Element::random_integer(sig, &mut rng, RANDOM_BOUND)?;
            let ok = x.mul_twist(&y)? == x.mul_doubling(&y)?;
            r.check(ok, || Witness::elements([x, y]));
        }
        reports.push(r);
    }

    let mut r = PropertyReport::new(Property::GeneratorAnchoring, sig);
    for a in 0..dim {
        let ok = basis_from_generators(BasisIndex(a), sig)? == basis(sig, a)?;
        r.check(ok, || Witness::indices([a]));
    }
    reports.push(r);

    // separate stream so adding engine checks above never shifts these samples
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_c0de);
    let mut involution = PropertyReport::new(Property::ConjugationInvolution, sig).seeded(seed);
    let mut anti = PropertyReport::new(Property::ConjugationAntiAutomorphism, sig).seeded(seed);
    let mut norm = PropertyReport::new(Property::NormScalar, sig).seeded(seed);
    for _ in 0..samples {
        let x = Element::random_integer(sig, &mut rng, RANDOM_BOUND)?;
        let y = Element::random_integer(sig, &mut rng, RANDOM_BOUND)?;
        involution.check(conjugation_violated(&x).is_none(), || Witness::elements([x.clone()]));
        anti.check(!anti_automorphism_violated(&x, &y)?, || Witness::elements([x.clone(), y.clone()]));
        norm.check(!norm_scalar_violated(&x)?, || Witness::elements([x.clone()]));
    }
    reports.extend([involution, anti, norm]);
    Ok(reports)
}

fn conjugation_violated(x: &Element) -> Option<()> {
    let c = x.conjugate();
    (c.conjugate() != *x || c != x.conjugate_recursive()).then_some(())
}

fn anti_automorphism_violated(x: &Element, y: &Element) -> Result<bool> {
    Ok(x.mul_doubling(y)?.conjugate() != y.conjugate().mul_doubling(&x.conjugate())?)
}

fn norm_scalar_violated(x: &Element) -> Result<bool> {
    let c = x.conjugate();
    let left = x.mul_doubling(&c)?;
    let right = c.mul_doubling(x)?;
    let sum = x + &c;
    Ok(left != right || !left.is_scalar() || !sum.is_scalar() || *sum.real_part() != x.trace())
}

/// True when the engine-level property fails on the witness.
pub(crate) fn engine_witness_violates(report: &PropertyReport, witness: &Witness) -> Result<bool> {
    let sig = report.signature;
    match report.property {
        Property::EnginesAgreeOnBasis => {
            let (a, b) = pair(&witness.indices)?;
            let (x, y) = (basis(sig, a)?, basis(sig, b)?);
            Ok(x.mul_twist(&y)? != x.mul_doubling(&y)?)
        }
        Property::EnginesAgreeOnDense => {
            let [x, y] = two(&witness.elements)?;
            Ok(x.mul_twist(y)? != x.mul_doubling(y)?)
        }
        Property::GeneratorAnchoring => {
            let a = *witness.indices.first().ok_or_else(|| missing("index"))?;
            Ok(basis_from_generators(BasisIndex(a), sig)? != basis(sig, a)?)
        }
        Property::ConjugationInvolution => {
            let x = witness.elements.first().ok_or_else(|| missing("element"))?;
            Ok(conjugation_violated(x).is_some())
        }
        Property::ConjugationAntiAutomorphism => {
            let [x, y] = two(&witness.elements)?;
            anti_automorphism_violated(x, y)
        }
        Property::NormScalar => {
            let x = witness.elements.first().ok_or_else(|| missing("element"))?;
            norm_scalar_violated(x)
        }
        other => Err(Error::Unsupported(format!("{} is not an engine check", other.name()))),
    }
}

fn missing(what: &str) -> Error {
    Error::Unsupported(format!("witness lacks an {what}"))
}

fn pair(indices: &[u32]) -> Result<(u32, u32)> {
    match indices {
        [a, b, ..] => Ok((*a, *b)),
        _ => Err(missing("index pair")),
    }
}

fn two(elements: &[Element]) -> Result<[&Element; 2]> {
    match elements {
        [x, y, ..] => Ok([x, y]),
        _ => Err(missing("element pair")),
    }
}

/// True when the relation holds for `a`, `b` taken from the standard algebra
/// one level below `ambient`, with `g` the generator added by the last step.
pub fn relation_holds(property: Property, a: &Element, b: &Element, ambient: AlgebraSignature) -> Result<bool> {
    if ambient.kind() != SignatureKind::Standard || ambient.level() == 0 {
        return Err(Error::Unsupported(
            "the doubling relations are checked in standard algebras of level >= 1".into(),
        ));
    }
    let g = Element::generator(ambient, ambient.level() - 1)?;
    let (a, b) = (a.embed(ambient)?, b.embed(ambient)?);
    let m = |x: &Element, y: &Element| x.mul_doubling(y);
    let (a_bar, b_bar) = (a.conjugate(), b.conjugate());
    let one = Element::one(ambient)?;
    Ok(match property {
        Property::RelationGSquared => m(&g, &g)? == -&one,
        Property::RelationGConjugate => g.conjugate() == -&g,
        Property::RelationAGb => m(&a, &m(&g, &b)?)? == m(&g, &m(&a_bar, &b)?)?,
        Property::RelationAgB => m(&m(&a, &g)?, &b)? == m(&m(&a, &b_bar)?, &g)?,
        Property::RelationGaBg => m(&m(&g, &a)?, &m(&b, &g)?)? == -&m(&a, &b)?.conjugate(),
        Property::RelationAg => m(&a, &g)? == m(&g, &a_bar)?,
        Property::RelationGa => m(&g, &a)? == m(&a_bar, &g)?,
        Property::RelationGaB => m(&m(&g, &a)?, &b)? == m(&g, &m(&b, &a)?)?,
        Property::RelationABg => m(&a, &m(&b, &g)?)? == m(&m(&b, &a)?, &g)?,
        Property::RelationGaGb => m(&m(&g, &a)?, &m(&g, &b)?)? == -&m(&b, &a_bar)?,
        Property::RelationAgBg => m(&m(&a, &g)?, &m(&b, &g)?)? == -&m(&b_bar, &a)?,
        other => return Err(Error::Unsupported(format!("{} is not a doubling relation", other.name()))),
    })
}

/// The eleven doubling relations in the standard algebra of level
/// `base_level + 1`, on `samples` random pairs `a`, `b` of level `base_level`.
pub fn verify_relations(base_level: u32, samples: u64, seed: u64) -> Result<Vec<PropertyReport>> {
    let base = AlgebraSignature::standard(base_level)?;
    let ambient = AlgebraSignature::standard(base_level + 1)?;
    let mut reports: Vec<PropertyReport> =
        RELATIONS.iter().map(|&p| PropertyReport::new(p, ambient).seeded(seed)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let a = Element::random_integer(base, &mut rng, RANDOM_BOUND)?;
        let b = Element::random_integer(base, &mut rng, RANDOM_BOUND)?;
        for r in reports.iter_mut() {
            let ok = relation_holds(r.property, &a, &b, ambient)?;
            r.check(ok, || Witness::elements([a.clone(), b.clone()]));
        }
    }
    Ok(reports)
}
