//! Human tables and `key=value` machine records.

use num_bigint::BigUint;
use padic_core::adeles::AdeleVector;
use padic_core::{NormValue, PadicKind, PadicNumber, Rational, Value};

pub fn rational_text(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub(crate) fn fraction_fields(prefix: &str, q: &Rational) -> String {
    format!("{prefix}_num={} {prefix}_den={}", q.numer(), q.denom())
}

pub(crate) fn norm_fields(n: &NormValue) -> String {
    fraction_fields("norm", &n.to_rational())
}

/// Digits most significant first, comma separated, so any base is
/// unambiguous.
fn digit_list(digits: impl DoubleEndedIterator<Item = BigUint>) -> String {
    digits
        .rev()
        .map(|d| d.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn number_record(x: &PadicNumber) -> String {
    let base = x.base();
    match x.kind() {
        PadicKind::ExactZero => format!("kind=exact_zero base={base} valuation=inf"),
        PadicKind::InexactZero { bound } => {
            format!("kind=inexact_zero base={base} modulus_exponent={bound}")
        }
        PadicKind::Approx {
            valuation,
            precision,
            ..
        } => format!(
            "kind=number base={base} valuation={valuation} digits={} modulus_exponent={}",
            digit_list(x.digits().into_iter()),
            valuation + *precision as i64
        ),
    }
}

pub fn machine_value(value: &Value) -> String {
    match value {
        Value::Number(x) => number_record(x),
        Value::Valuation(v) => format!("kind=valuation valuation={v}"),
        Value::Norm(n) => format!("kind=norm {}", norm_fields(n)),
        Value::Expansion(e) => format!(
            "kind=expansion base={} valuation={} preperiod={} period={}",
            e.base,
            e.valuation,
            digit_list(e.preperiod.iter().cloned()),
            digit_list(e.period.iter().cloned())
        ),
    }
}

/// One row per place, the real place first and primes ascending, then the
/// product of all norms.
pub(crate) fn product_table(
    adele: &AdeleVector,
    product: &Rational,
    marker: bool,
    machine: bool,
) -> String {
    let mut rows: Vec<(String, NormValue, Option<String>)> =
        vec![("inf".into(), adele.real_norm().clone(), None)];
    for (p, entry) in adele.finite_entries() {
        let expansion = entry.expansion.as_ref().map(|x| x.render(marker));
        rows.push((p.to_string(), entry.norm.clone(), expansion));
    }

    if machine {
        let mut out: Vec<String> = adele
            .finite_entries()
            .iter()
            .map(|(p, entry)| {
                let mut line = format!("kind=place place={p} {}", norm_fields(&entry.norm));
                if let Some(x) = &entry.expansion {
                    if let PadicKind::Approx { valuation, .. } = x.kind() {
                        line.push_str(&format!(
                            " valuation={valuation} digits={}",
                            digit_list(x.digits().into_iter())
                        ));
                    }
                }
                line
            })
            .collect();
        out.insert(
            0,
            format!("kind=place place=inf {}", norm_fields(adele.real_norm())),
        );
        out.push(format!("kind=product {}", fraction_fields("norm", product)));
        return out.join("\n");
    }

    let norms: Vec<String> = rows.iter().map(|(_, n, _)| n.to_string()).collect();
    let place_width = rows
        .iter()
        .map(|(p, _, _)| p.len())
        .max()
        .unwrap_or(0)
        .max(5);
    let norm_width = norms.iter().map(String::len).max().unwrap_or(0).max(4);
    let with_expansions = adele.has_expansions();
    let mut out = Vec::new();
    let header = format!("{:<place_width$}  {:<norm_width$}", "place", "norm");
    out.push(if with_expansions {
        format!("{header}  expansion")
    } else {
        header
    });
    for ((place, _, expansion), norm) in rows.iter().zip(&norms) {
        let line = format!("{place:<place_width$}  {norm:<norm_width$}");
        out.push(match expansion {
            Some(x) => format!("{line}  {x}"),
            None => line.trim_end().to_string(),
        });
    }
    out.push(format!("product = {}", rational_text(product)));
    out.join("\n")
}

#[cfg(test)]
mod tests {
    use super::*;
    use padic_core::{adele_of, eval_str, EvalContext};

    fn machine(text: &str, base: u32, precision: usize) -> String {
        let ctx = EvalContext::new(base.into(), precision).unwrap();
        machine_value(&eval_str(text, &ctx).unwrap())
    }

    #[test]
    fn records() {
        assert_eq!(
            machine("1/3", 10, 4),
            "kind=number base=10 valuation=0 digits=6,6,6,7 modulus_exponent=4"
        );
        assert_eq!(
            machine("-58 + 58", 10, 6),
            "kind=inexact_zero base=10 modulus_exponent=6"
        );
        assert_eq!(machine("0", 10, 6), "kind=exact_zero base=10 valuation=inf");
        assert_eq!(machine("norm(12)", 2, 6), "kind=norm norm_num=1 norm_den=4");
        assert_eq!(machine("val(0)", 2, 6), "kind=valuation valuation=inf");
        assert_eq!(
            machine("expand(1/12)", 10, 6),
            "kind=expansion base=10 valuation=-2 preperiod=7,5 period=6"
        );
        assert_eq!(
            machine("1/50", 60, 2),
            "kind=number base=60 valuation=-2 digits=1,12 modulus_exponent=0"
        );
    }

    #[test]
    fn product_tables() {
        let q = Rational::new(12.into(), 5.into());
        let adele = adele_of(&q, 3, true).unwrap();
        let one = Rational::from_integer(1.into());
        assert_eq!(
            product_table(&adele, &one, false, false),
            "place  norm  expansion\n\
             inf    12/5\n\
             2      1/4   ...11100\n\
             3      1/3   ...1220\n\
             5      5     ...02.2\n\
             product = 1"
        );
        assert_eq!(
            product_table(&adele_of(&q, 3, false).unwrap(), &one, false, true),
            "kind=place place=inf norm_num=12 norm_den=5\n\
             kind=place place=2 norm_num=1 norm_den=4\n\
             kind=place place=3 norm_num=1 norm_den=3\n\
             kind=place place=5 norm_num=5 norm_den=1\n\
             kind=product norm_num=1 norm_den=1"
        );
    }
}
