use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::algebra::{AlgebraSignature, Element};

/// Every property the verification suites can report on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Property {
    // twist laws
    ClosedMatchesRecursive,
    SplitClosedMatchesRecursive,
    UnitRowColumn,
    Diagonal,
    Antisymmetry,
    EqualDegreeCutoffBitsDiffer,
    CutoffPhiIsOne,
    UnifiedFormula,
    SplitReduction,
    PaddingIndependence,
    // tables
    TableInvariants,
    // algebra laws
    Commutativity,
    Associativity,
    LeftAlternativity,
    RightAlternativity,
    Flexibility,
    NormMultiplicativity,
    // engine cross-checks
    EnginesAgreeOnBasis,
    EnginesAgreeOnDense,
    GeneratorAnchoring,
    ConjugationInvolution,
    ConjugationAntiAutomorphism,
    NormScalar,
    // doubling relations; `g` is the newest generator, `a`, `b` live below it
    #[serde(rename = "relation-g-squared")]
    RelationGSquared,
    #[serde(rename = "relation-g-conjugate")]
    RelationGConjugate,
    #[serde(rename = "relation-a(gb)")]
    RelationAGb,
    #[serde(rename = "relation-(ag)b")]
    RelationAgB,
    #[serde(rename = "relation-(ga)(bg)")]
    RelationGaBg,
    #[serde(rename = "relation-ag")]
    RelationAg,
    #[serde(rename = "relation-ga")]
    RelationGa,
    #[serde(rename = "relation-(ga)b")]
    RelationGaB,
    #[serde(rename = "relation-a(bg)")]
    RelationABg,
    #[serde(rename = "relation-(ga)(gb)")]
    RelationGaGb,
    #[serde(rename = "relation-(ag)(bg)")]
    RelationAgBg,
    // zero divisors
    ZeroDivisorFree,
}

impl Property {
    pub fn name(self) -> String {
        serde_json::to_value(self)
            .ok()
            .and_then(|v| v.as_str().map(str::to_owned))
            .unwrap_or_default()
    }
}

/// A concrete counterexample: basis indices, elements, or both.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Witness {
    pub indices: Vec<u32>,
    pub elements: Vec<Element>,
}

impl Witness {
    pub fn indices(indices: impl Into<Vec<u32>>) -> Self {
        Witness {
            indices: indices.into(),
            elements: Vec::new(),
        }
    }

    pub fn elements(elements: impl Into<Vec<Element>>) -> Self {
        Witness {
            indices: Vec::new(),
            elements: elements.into(),
        }
    }

    pub fn with_elements(mut self, elements: impl Into<Vec<Element>>) -> Self {
        self.elements = elements.into();
        self
    }
}

impl Serialize for Witness {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Witness", 2)?;
        st.serialize_field("indices", &self.indices)?;
        let elements: Vec<String> = self.elements.iter().map(ToString::to_string).collect();
        st.serialize_field("elements", &elements)?;
        st.end()
    }
}

/// Outcome of one property check.
#[derive(Clone, Debug, PartialEq)]
pub struct PropertyReport {
    pub property: Property,
    pub signature: AlgebraSignature,
    pub holds: bool,
    /// Whether the property is expected to hold for this signature.
    pub expected: bool,
    /// Number of cases the property was evaluated on.
    pub checked: u64,
    /// Cases the property does not apply to.
    pub skipped: u64,
    pub seed: Option<u64>,
    pub witness: Option<Witness>,
}

impl PropertyReport {
    pub(crate) fn new(property: Property, signature: AlgebraSignature) -> Self {
        PropertyReport {
            property,
            signature,
            holds: true,
            expected: true,
            checked: 0,
            skipped: 0,
            seed: None,
            witness: None,
        }
    }

    pub(crate) fn expect(mut self, expected: bool) -> Self {
        self.expected = expected;
        self
    }

    pub(crate) fn seeded(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    /// Records a failing case; only the first witness is kept.
    pub(crate) fn fail(&mut self, witness: Witness) {
        if self.holds {
            self.holds = false;
            self.witness = Some(witness);
        }
    }

    pub(crate) fn check(&mut self, ok: bool, witness: impl FnOnce() -> Witness) {
        self.checked += 1;
        if !ok {
            self.fail(witness());
        }
    }

    pub fn level(&self) -> u32 {
        self.signature.level()
    }

    pub fn matches_expectation(&self) -> bool {
        self.holds == self.expected
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

impl Serialize for PropertyReport {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("PropertyReport", 9)?;
        st.serialize_field("property", &self.property)?;
        st.serialize_field("n", &self.signature.level())?;
        st.serialize_field("kind", &self.signature.kind_label())?;
        st.serialize_field("holds", &self.holds)?;
        st.serialize_field("expected", &self.expected)?;
        st.serialize_field("checked", &self.checked)?;
        st.serialize_field("skipped", &self.skipped)?;
        st.serialize_field("seed", &self.seed)?;
        st.serialize_field("witness", &self.witness)?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_line_shape() {
        let sig = AlgebraSignature::standard(2).unwrap();
        let mut r = PropertyReport::new(Property::Associativity, sig).seeded(7);
        r.check(true, Witness::default);
        r.check(false, || Witness::indices([1, 2, 3]));
        r.check(false, || Witness::indices([4, 5, 6]));
        let v: serde_json::Value = serde_json::from_str(&r.to_json_line()).unwrap();
        assert_eq!(v["property"], "associativity");
        assert_eq!(v["n"], 2);
        assert_eq!(v["kind"], "standard");
        assert_eq!(v["holds"], false);
        assert_eq!(v["checked"], 3);
        assert_eq!(v["seed"], 7);
        assert_eq!(v["witness"]["indices"], serde_json::json!([1, 2, 3]));
    }

    #[test]
    fn relation_names() {
        assert_eq!(Property::RelationGaGb.name(), "relation-(ga)(gb)");
        assert_eq!(Property::EqualDegreeCutoffBitsDiffer.name(), "equal-degree-cutoff-bits-differ");
    }
}
