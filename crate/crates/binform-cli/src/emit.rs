//! Output envelopes and table emitters. JSON floats are written with 17
//! significant digits through arbitrary-precision numbers so byte output is
//! fixed across platforms; markdown mirrors the classical table layout
//! (Delta | forms | n).

use binform::hermforms::HermClassList;
use binform::quadforms::ReducedClassList;
use serde_json::{Map, Number, Value};

/// A float as a JSON number with exactly 17 significant digits.
pub fn json_f64(x: f64) -> Value {
    let s = if x == 0.0 {
        "0".to_string()
    } else if x.is_finite() {
        format!("{:.16e}", x)
    } else {
        // JSON has no infinities; the bounds report uses null there
        return Value::Null;
    };
    Value::Number(s.parse::<Number>().expect("formatted float parses"))
}

pub fn json_str(s: impl ToString) -> Value {
    Value::String(s.to_string())
}

pub fn obj(pairs: Vec<(&str, Value)>) -> Value {
    let mut map = Map::new();
    for (k, v) in pairs {
        map.insert(k.to_string(), v);
    }
    Value::Object(map)
}

/// Markdown table for quadratic class lists, one row per discriminant.
/// Classes attaining the minimal class height are set in bold, which is how
/// the classical tables flag the special class.
pub fn quad_md(lists: &[ReducedClassList]) -> String {
    let mut out = String::new();
    out.push_str("| Delta | Reduced form representatives of classes | n |\n");
    out.push_str("|---|---|---|\n");
    for list in lists {
        let min = list.forms.iter().map(|f| f.c.clone()).min();
        let cells: Vec<String> = list
            .forms
            .iter()
            .map(|f| {
                if Some(&f.c) == min.as_ref() {
                    format!("**{f}**")
                } else {
                    f.to_string()
                }
            })
            .collect();
        out.push_str(&format!(
            "| {} | {} | {} |\n",
            list.discriminant,
            cells.join(", "),
            list.count
        ));
    }
    out
}

pub fn quad_csv(lists: &[ReducedClassList]) -> String {
    let mut out = String::from("disc,a,b,c\n");
    for list in lists {
        for f in &list.forms {
            out.push_str(&format!("{},{},{},{}\n", list.discriminant, f.a, f.b, f.c));
        }
    }
    out
}

pub fn quad_json(lists: &[ReducedClassList]) -> Value {
    let tables: Vec<Value> = lists
        .iter()
        .map(|list| {
            let forms: Vec<Value> = list
                .forms
                .iter()
                .map(|f| Value::Array(vec![json_str(&f.a), json_str(&f.b), json_str(&f.c)]))
                .collect();
            let minimal: Vec<Value> = list
                .minimal_height_forms()
                .iter()
                .map(|f| json_str(*f))
                .collect();
            obj(vec![
                ("discriminant", json_str(&list.discriminant)),
                ("count", Value::from(list.count)),
                ("forms", Value::Array(forms)),
                ("minimal_height_classes", Value::Array(minimal)),
            ])
        })
        .collect();
    if tables.len() == 1 {
        tables.into_iter().next().unwrap()
    } else {
        obj(vec![("tables", Value::Array(tables))])
    }
}

pub fn herm_md(lists: &[HermClassList]) -> String {
    let mut out = String::new();
    out.push_str("| Delta | Reduced form representatives of classes | n |\n");
    out.push_str("|---|---|---|\n");
    for list in lists {
        let cells: Vec<String> = list.forms.iter().map(|f| f.to_string()).collect();
        out.push_str(&format!(
            "| {} | {} | {} |\n",
            list.discriminant,
            cells.join(", "),
            list.count
        ));
    }
    out
}

pub fn herm_csv(lists: &[HermClassList]) -> String {
    let mut out = String::from("disc,a,b,c\n");
    for list in lists {
        for f in &list.forms {
            out.push_str(&format!("{},{},{},{}\n", list.discriminant, f.a, f.b, f.c));
        }
    }
    out
}

pub fn herm_json(lists: &[HermClassList]) -> Value {
    let tables: Vec<Value> = lists
        .iter()
        .map(|list| {
            let forms: Vec<Value> = list
                .forms
                .iter()
                .map(|f| Value::Array(vec![json_str(&f.a), json_str(&f.b), json_str(&f.c)]))
                .collect();
            obj(vec![
                ("discriminant", json_str(&list.discriminant)),
                ("count", Value::from(list.count)),
                ("forms", Value::Array(forms)),
            ])
        })
        .collect();
    if tables.len() == 1 {
        tables.into_iter().next().unwrap()
    } else {
        obj(vec![("tables", Value::Array(tables))])
    }
}
