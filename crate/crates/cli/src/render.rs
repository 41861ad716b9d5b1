//! Output rendering. Text forms come straight from the core crate; JSON
//! follows the element schema `{ "n", "mode", "terms": [{"word","coeff"}] }`
//! with the mode as `"generic"` or `{"k1": "p/q", "k2": "p/q"}`. Keys are
//! emitted in sorted order, so every rendering is byte-stable.

use serde_json::{json, Value};

use fused_hecke::diagram::DiagramElement;
use fused_hecke::hecke::HeckeElement;
use fused_hecke::tableaux::Bratteli;
use fused_hecke::words::{SignedWord, WordFilter};
use fused_hecke::ScalarMode;

use crate::OutFormat;

fn mode_value(mode: &ScalarMode) -> Value {
    match mode {
        ScalarMode::Generic => json!("generic"),
        ScalarMode::Specialized(k1, k2) => {
            json!({"k1": k1.to_string(), "k2": k2.to_string()})
        }
    }
}

pub fn hecke(e: &HeckeElement, out: OutFormat) -> String {
    match out {
        OutFormat::Text => format!("{}\n", e.to_text()),
        OutFormat::Json => {
            let terms: Vec<Value> = e
                .sorted_words()
                .into_iter()
                .map(|w| {
                    json!({
                        "word": w.to_signed(e.n()).to_text(),
                        "coeff": e.coeff(w).to_text(),
                    })
                })
                .collect();
            let v = json!({"n": e.n(), "mode": mode_value(e.mode()), "terms": terms});
            format!("{v}\n")
        }
        OutFormat::Dot => unreachable!("rejected by the dispatcher"),
    }
}

pub fn diagram(d: &DiagramElement, out: OutFormat) -> String {
    match out {
        OutFormat::Text => format!("{}\n", d.to_text()),
        OutFormat::Json => {
            let terms: Vec<Value> = d
                .terms()
                .map(|(p, c)| json!({"diagram": p.to_text(), "coeff": c.to_string()}))
                .collect();
            let v = json!({"k": d.k(), "n": d.n(), "terms": terms});
            format!("{v}\n")
        }
        OutFormat::Dot => unreachable!("rejected by the dispatcher"),
    }
}

pub fn filter_text(filter: WordFilter) -> String {
    match filter {
        WordFilter::All => "all".into(),
        WordFilter::Avoiding => "avoiding".into(),
        WordFilter::AvoidingCap(k) => format!("cap {k}"),
    }
}

pub fn words(n: usize, filter: WordFilter, words: &[SignedWord], out: OutFormat) -> String {
    match out {
        OutFormat::Text => {
            let mut s = String::new();
            for w in words {
                s.push_str(&w.to_text());
                s.push('\n');
            }
            s
        }
        OutFormat::Json => {
            let list: Vec<String> = words.iter().map(|w| w.to_text()).collect();
            let v = json!({
                "n": n,
                "filter": filter_text(filter),
                "count": words.len(),
                "words": list,
            });
            format!("{v}\n")
        }
        OutFormat::Dot => unreachable!("rejected by the dispatcher"),
    }
}

pub fn bratteli(b: &Bratteli, out: OutFormat) -> String {
    match out {
        OutFormat::Dot => b.to_dot(),
        OutFormat::Text => {
            let mut s = String::new();
            for (m, (set, dims)) in b.levels.iter().zip(&b.dims).enumerate() {
                let verts: Vec<String> = set
                    .iter()
                    .zip(dims)
                    .map(|(shape, d)| format!("{} d={}", shape.to_text(), d))
                    .collect();
                let total: u64 = dims.iter().map(|d| d * d).sum();
                s.push_str(&format!("level {m}: dim {total}  [{}]\n", verts.join(", ")));
            }
            s
        }
        OutFormat::Json => {
            let levels: Vec<Vec<String>> = b
                .levels
                .iter()
                .map(|set| set.iter().map(|s| s.to_text()).collect())
                .collect();
            let v = json!({
                "levels": levels,
                "path_counts": b.dims,
                "level_dims": b.level_dims(),
            });
            format!("{v}\n")
        }
    }
}
