//! Registry of relations and factorization identities among the catalog
//! generators. Every verdict is computed by exact multiplication.

use rayon::prelude::*;
use serde_json::{json, Value};

use super::search::{generation_check, SearchConfig};
use super::{evaluate_word, Esl3Error, GeneratorCatalog, Word, PAIRS};
use crate::matrix::SquareMatrix;
use crate::report::{Expectation, ReportEntry, Verdict, VerificationReport};

pub const COMMUTATOR_CONVENTION: &str = "[x,y] = x y x^-1 y^-1; words multiply left to right";

/// Whether a claim is checked exactly as printed or in the form consistent
/// with the definitions of its objects.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Form {
    Printed,
    Definitional,
}

impl Form {
    fn label(self) -> &'static str {
        match self {
            Form::Printed => "printed",
            Form::Definitional => "definitional",
        }
    }
}

/// A word identity `lhs = rhs` over the catalog.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Claim {
    pub id: String,
    pub lhs: Word,
    pub rhs: Word,
    pub source: String,
    pub expected: Expectation,
    pub form: Form,
}

fn w(s: &str) -> Word {
    s.parse().expect("registry words are well formed")
}

fn claim(
    id: impl Into<String>,
    lhs: Word,
    rhs: Word,
    source: &str,
    expected: Expectation,
    form: Form,
) -> Claim {
    Claim {
        id: id.into(),
        lhs,
        rhs,
        source: source.to_string(),
        expected,
        form,
    }
}

const SRC_MONOMIAL: &str = "relations for the monomial generator M6";
const SRC_PERMUTATION: &str = "relations for the permutation generator P3";
const SRC_STEINBERG: &str = "commutator relations between transvections";
const SRC_INVOLUTION: &str = "involutive factorization of transvections";
const SRC_CHAIN: &str = "construction of t13 from displayed i12, i23";
const SRC_CENTRAL: &str = "D123 centralizes SL3(Z)";
const SRC_SEMIDIRECT: &str = "D1 does not centralize SL3(Z); SL3(Z) is the kernel";

/// Every word identity in the registry.
pub fn registry_claims() -> Vec<Claim> {
    use Expectation::{Holds, TypoSuspected};
    use Form::{Definitional, Printed};
    let mut out = Vec::new();

    let conj = |g: &str, x: &str| Word::conjugate(&w(g), &w(x));
    for (id, x, rhs, expected) in [
        ("m6.conj.t12", "t12", "t31^-1", Holds),
        ("m6.conj.t31", "t31", "t23^-1", Holds),
        ("m6.conj.t23", "t23", "t12^-1", TypoSuspected),
        ("m6.conj.t13", "t13", "t32^-1", Holds),
        ("m6.conj.t23inv", "t23^-1", "t31^-1", TypoSuspected),
    ] {
        out.push(claim(
            id,
            conj("M6", x),
            w(rhs),
            SRC_MONOMIAL,
            expected,
            Printed,
        ));
    }
    out.push(claim(
        "m6.order6",
        w("M6").pow(6),
        Word::empty(),
        SRC_MONOMIAL,
        Holds,
        Printed,
    ));
    out.push(claim(
        "m6.cube",
        w("M6").pow(3),
        w("D123"),
        SRC_MONOMIAL,
        Holds,
        Printed,
    ));

    for (id, x, rhs, expected) in [
        ("p3.conj.t12", "t12", "t31", Holds),
        ("p3.conj.t31", "t31", "t23^-1", TypoSuspected),
        ("p3.conj.t12.alt", "t12", "t23^-1", TypoSuspected),
    ] {
        out.push(claim(
            id,
            conj("P3", x),
            w(rhs),
            SRC_PERMUTATION,
            expected,
            Printed,
        ));
    }
    out.push(claim(
        "p3.order3",
        w("P3").pow(3),
        Word::empty(),
        SRC_PERMUTATION,
        Holds,
        Printed,
    ));

    for (i, j) in PAIRS {
        for (k, l) in PAIRS {
            let lhs = Word::commutator(&w(&format!("t{i}{j}")), &w(&format!("t{k}{l}")));
            if j == k && i != l {
                let id = format!("steinberg.t{i}{j}.t{k}{l}");
                out.push(claim(
                    id,
                    lhs,
                    w(&format!("t{i}{l}")),
                    SRC_STEINBERG,
                    Holds,
                    Printed,
                ));
            } else if i != l && k != j {
                let id = format!("steinberg.t{i}{j}.t{k}{l}.commute");
                out.push(claim(id, lhs, Word::empty(), SRC_STEINBERG, Holds, Printed));
            }
        }
    }

    for name in super::GeneratorCatalog::involution_set() {
        let id = format!("involution.{name}.square");
        out.push(claim(
            id,
            w(name).pow(2),
            Word::empty(),
            SRC_INVOLUTION,
            Holds,
            Definitional,
        ));
    }
    out.push(claim(
        "involution.i12_disp.square",
        w("i12_disp").pow(2),
        Word::empty(),
        SRC_INVOLUTION,
        TypoSuspected,
        Printed,
    ));
    out.push(claim(
        "involution.i23_disp.square",
        w("i23_disp").pow(2),
        Word::empty(),
        SRC_INVOLUTION,
        Holds,
        Printed,
    ));

    for (id, lhs, rhs, expected) in [
        ("factor.printed.i12.D1", "i12 D1", "t12", Holds),
        ("factor.printed.i23.D2", "i23 D2", "t23", Holds),
        ("factor.printed.i13.D1", "i13 D1", "t13", Holds),
        ("factor.printed.i21.D2", "i21 D2", "t21", Holds),
        ("factor.printed.D2.i32", "D2 i32", "t32", TypoSuspected),
        ("factor.printed.D1.i31", "D1 i31", "t31", TypoSuspected),
        (
            "factor.printed.i12_disp.D1",
            "i12_disp D1",
            "t12",
            TypoSuspected,
        ),
        (
            "factor.printed.i23_disp.D2",
            "i23_disp D2",
            "t23",
            TypoSuspected,
        ),
    ] {
        out.push(claim(id, w(lhs), w(rhs), SRC_INVOLUTION, expected, Printed));
    }
    for (k, l) in PAIRS {
        let id = format!("factor.definitional.i{k}{l}.D{k}");
        let lhs = w(&format!("i{k}{l} D{k}"));
        out.push(claim(
            id,
            lhs,
            w(&format!("t{k}{l}")),
            SRC_INVOLUTION,
            Holds,
            Definitional,
        ));
    }

    out.push(claim(
        "chain.product",
        w("i12_disp i23_disp"),
        w("i12i23_disp"),
        SRC_CHAIN,
        TypoSuspected,
        Printed,
    ));
    out.push(claim(
        "chain.square",
        w("i12i23_disp").pow(2),
        w("I13_disp"),
        SRC_CHAIN,
        TypoSuspected,
        Printed,
    ));
    out.push(claim(
        "chain.times.D3",
        w("I13_disp D3"),
        w("t13"),
        SRC_CHAIN,
        Holds,
        Printed,
    ));
    out.push(claim(
        "chain.times.D1",
        w("I13_disp D1"),
        w("t13"),
        SRC_CHAIN,
        TypoSuspected,
        Printed,
    ));

    for g in [
        "D1", "D2", "D3", "P3", "M6", "t12", "t13", "t21", "t23", "t31", "t32",
    ] {
        let id = format!("central.D123.{g}");
        let lhs = Word::commutator(&w("D123"), &w(g));
        out.push(claim(id, lhs, Word::empty(), SRC_CENTRAL, Holds, Printed));
    }
    out.push(claim(
        "semidirect.D1.t12",
        conj("D1", "t12"),
        w("t12^-1"),
        SRC_SEMIDIRECT,
        Holds,
        Definitional,
    ));

    out
}

fn rows(m: &SquareMatrix) -> Value {
    json!(m.rows_as_numbers())
}

fn evaluate_claim(c: &Claim, catalog: &GeneratorCatalog) -> ReportEntry {
    let lhs = evaluate_word(&c.lhs, catalog);
    let rhs = evaluate_word(&c.rhs, catalog);
    let (verdict, lhs_value, rhs_value, detail) = match (lhs, rhs) {
        (Ok(l), Ok(r)) => (Verdict::from_bool(l == r), rows(&l), rows(&r), None),
        (l, r) => {
            let err = l.err().or(r.err()).map(|e| e.to_string());
            (Verdict::Fails, Value::Null, Value::Null, err)
        }
    };
    ReportEntry {
        id: c.id.clone(),
        source: c.source.clone(),
        convention: format!("{COMMUTATOR_CONVENTION}; form: {}", c.form.label()),
        expected: c.expected,
        verdict,
        lhs: c.lhs.to_string(),
        rhs: c.rhs.to_string(),
        lhs_value,
        rhs_value,
        detail,
    }
}

/// Evaluates claims in parallel; the report is ordered by claim id.
pub fn run_claims(claims: &[Claim], catalog: &GeneratorCatalog) -> VerificationReport {
    let entries = claims
        .par_iter()
        .map(|c| evaluate_claim(c, catalog))
        .collect();
    VerificationReport::new(entries)
}

/// Result of a centrality scan over the catalog.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralityOutcome {
    pub central: bool,
    /// First catalog generator that fails to commute.
    pub witness: Option<String>,
}

/// Whether the named generator commutes with every catalog generator.
pub fn centrality_check(
    name: &str,
    catalog: &GeneratorCatalog,
) -> Result<CentralityOutcome, Esl3Error> {
    let g = catalog.lookup(name)?;
    for (other, h) in catalog.iter() {
        if g * h != h * g {
            return Ok(CentralityOutcome {
                central: false,
                witness: Some(other.to_string()),
            });
        }
    }
    Ok(CentralityOutcome {
        central: true,
        witness: None,
    })
}

/// For each determinant-one catalog generator `s`, checks that `g·s·g⁻¹`
/// still has determinant one.
pub fn conjugation_closure_check(
    name: &str,
    catalog: &GeneratorCatalog,
) -> Result<VerificationReport, Esl3Error> {
    let g = catalog.lookup(name)?;
    let sl3: Vec<(&str, &SquareMatrix)> = catalog
        .iter()
        .filter(|(n, m)| ["t", "P"].iter().any(|p| n.starts_with(p)) && m.det().is_one())
        .collect();
    let mut entries = Vec::new();
    for (s_name, s) in sl3 {
        let conj = s.conjugate_by(g)?;
        let det = conj.det();
        entries.push(ReportEntry {
            id: format!("closure.{name}.{s_name}"),
            source: SRC_SEMIDIRECT.to_string(),
            convention: format!("{COMMUTATOR_CONVENTION}; check: det(g s g^-1) = 1"),
            expected: Expectation::Holds,
            verdict: Verdict::from_bool(det.is_one()),
            lhs: Word::conjugate(&Word::gen(name), &Word::gen(s_name)).to_string(),
            rhs: "SL3(Z)".to_string(),
            lhs_value: rows(&conj),
            rhs_value: json!(det),
            detail: None,
        });
    }
    Ok(VerificationReport::new(entries))
}

const GENERATION_TARGETS: [&str; 12] = [
    "D1", "D2", "D3", "D123", "P3", "M6", "t12", "t13", "t21", "t23", "t31", "t32",
];

fn generation_entries(
    label: &str,
    seeds: &[&str],
    catalog: &GeneratorCatalog,
    config: SearchConfig,
) -> Result<Vec<ReportEntry>, Esl3Error> {
    let outcomes = generation_check(
        seeds,
        &GENERATION_TARGETS,
        catalog,
        super::MAX_SEARCH_LEN,
        config,
    )?;
    let source = format!("generating set <{}>", seeds.join(", "));
    outcomes
        .into_iter()
        .map(|o| {
            let target = catalog.lookup(&o.target)?;
            let (verdict, lhs, lhs_value) = match &o.word {
                Some(word) => {
                    let value = evaluate_word(word, catalog)?;
                    (
                        Verdict::from_bool(&value == target),
                        word.to_string(),
                        rows(&value),
                    )
                }
                None => (Verdict::Fails, String::new(), Value::Null),
            };
            Ok(ReportEntry {
                id: format!("generation.{label}.{}", o.target),
                source: source.clone(),
                convention: format!(
                    "{COMMUTATOR_CONVENTION}; bounded search, entries <= {}, {} states",
                    config.entry_cap, config.node_limit
                ),
                expected: Expectation::Holds,
                verdict,
                lhs,
                rhs: o.target.clone(),
                lhs_value,
                rhs_value: rows(target),
                detail: o
                    .word
                    .as_ref()
                    .map(|w| format!("word length {}", w.len()))
                    .or(o
                        .budget_exceeded
                        .then(|| "search budget exceeded".to_string())),
            })
        })
        .collect()
}

/// The full registry: word identities, conjugation closure under `D1`, and
/// bounded generation checks for the proposed generating sets.
pub fn run_claim_registry(
    catalog: &GeneratorCatalog,
    config: SearchConfig,
) -> Result<VerificationReport, Esl3Error> {
    let mut entries = run_claims(&registry_claims(), catalog).claims;
    entries.extend(conjugation_closure_check("D1", catalog)?.claims);
    let seed_sets: [(&str, &[&str]); 3] = [
        ("d123_p3_t12_t32", &["D123", "P3", "t12", "t32"]),
        ("d1_t12_t32_p3", &["D1", "t12", "t32", "P3"]),
        ("m6_t12", &["M6", "t12"]),
    ];
    let generated: Vec<Vec<ReportEntry>> = seed_sets
        .par_iter()
        .map(|(label, seeds)| generation_entries(label, seeds, catalog, config))
        .collect::<Result<_, _>>()?;
    entries.extend(generated.into_iter().flatten());
    Ok(VerificationReport::new(entries))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn claim_ids_are_unique() {
        let claims = registry_claims();
        let mut ids: Vec<&str> = claims.iter().map(|c| c.id.as_str()).collect();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), claims.len());
    }

    #[test]
    fn printed_expectations_match_computation() {
        let report = run_claims(&registry_claims(), &GeneratorCatalog::standard());
        for entry in &report.claims {
            let expected_verdict = match entry.expected {
                Expectation::Holds => Verdict::Holds,
                Expectation::TypoSuspected => Verdict::Fails,
            };
            assert_eq!(entry.verdict, expected_verdict, "{}", entry.id);
        }
    }

    #[test]
    fn chain_square_reports_true_value() {
        let report = run_claims(&registry_claims(), &GeneratorCatalog::standard());
        let entry = report.entry("chain.square").unwrap();
        assert_eq!(entry.verdict, Verdict::Fails);
        assert_eq!(entry.lhs_value, json!([[1, 2, 1], [0, 1, 0], [0, 0, 1]]));
    }

    #[test]
    fn centrality() {
        let cat = GeneratorCatalog::standard();
        assert!(centrality_check("D123", &cat).unwrap().central);
        let d1 = centrality_check("D1", &cat).unwrap();
        assert!(!d1.central);
        let witness = d1.witness.unwrap();
        let g = cat.get(&witness).unwrap();
        let d = cat.get("D1").unwrap();
        assert_ne!(d * g, g * d);

        let mut with_identity = GeneratorCatalog::standard();
        with_identity.insert("E", SquareMatrix::identity(crate::arith::Ring::Integers, 3));
        assert!(centrality_check("E", &with_identity).unwrap().central);
    }

    #[test]
    fn closure_under_d1() {
        let cat = GeneratorCatalog::standard();
        let report = conjugation_closure_check("D1", &cat).unwrap();
        assert_eq!(report.summary.total, 7);
        assert!(report.passed());
        let t12 = report.entry("closure.D1.t12").unwrap();
        assert_eq!(t12.lhs_value, json!([[1, -1, 0], [0, 1, 0], [0, 0, 1]]));
        assert!(conjugation_closure_check("D123", &cat).unwrap().passed());
        assert!(conjugation_closure_check("t12", &cat).unwrap().passed());
    }
}
