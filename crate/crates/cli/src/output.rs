//! Command results and their JSON and TSV renderings.

use serde_json::{json, Map, Value};

use koszulkit_core::graded::{BigradedDims, TruncationBounds};

/// A named table with fixed columns; every cell is an exact integer or a
/// short string.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(name: &str, columns: &[&str]) -> Self {
        Table { name: name.into(), columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    /// `(weight, degree, dim)` rows in ascending order. With `degree_shift`,
    /// the degree column is moved by that amount and renamed.
    pub fn from_dims(name: &str, dims: &BigradedDims, degree_column: &str, degree_shift: u32) -> Self {
        let mut t = Table::new(name, &["weight", degree_column, "dim"]);
        for (bd, n) in dims.iter() {
            t.rows.push(vec![bd.weight.into(), (bd.degree + degree_shift).into(), n.into()]);
        }
        t
    }
}

/// Everything a command prints.
#[derive(Debug, Clone, PartialEq)]
pub struct OutputTable {
    pub command: String,
    pub bounds: TruncationBounds,
    pub meta: Vec<(String, Value)>,
    pub tables: Vec<Table>,
}

impl OutputTable {
    pub fn new(command: &str, bounds: TruncationBounds) -> Self {
        OutputTable { command: command.into(), bounds, meta: Vec::new(), tables: Vec::new() }
    }

    pub fn meta(&mut self, key: &str, value: Value) -> &mut Self {
        self.meta.push((key.into(), value));
        self
    }

    pub fn table(&mut self, table: Table) -> &mut Self {
        self.tables.push(table);
        self
    }

    pub fn to_json(&self) -> Value {
        let mut out = Map::new();
        out.insert("command".into(), Value::String(self.command.clone()));
        out.insert(
            "bounds".into(),
            json!({"max_weight": self.bounds.max_weight, "max_degree": self.bounds.max_degree}),
        );
        for (k, v) in &self.meta {
            out.insert(k.clone(), v.clone());
        }
        for t in &self.tables {
            let rows = t
                .rows
                .iter()
                .map(|r| Value::Object(t.columns.iter().cloned().zip(r.iter().cloned()).collect()))
                .collect();
            out.insert(t.name.clone(), Value::Array(rows));
        }
        Value::Object(out)
    }

    pub fn render_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("values serialize");
        s.push('\n');
        s
    }

    /// Metadata as `# key<TAB>value` lines, then each table under a
    /// `## name` line with a header row.
    pub fn render_tsv(&self) -> String {
        let mut s = format!("# command\t{}\n# bounds\t{}\t{}\n", self.command, self.bounds.max_weight, self.bounds.max_degree);
        for (k, v) in &self.meta {
            s.push_str(&format!("# {k}\t{}\n", cell(v)));
        }
        for t in &self.tables {
            s.push_str(&format!("## {}\n{}\n", t.name, t.columns.join("\t")));
            for r in &t.rows {
                s.push_str(&r.iter().map(cell).collect::<Vec<_>>().join("\t"));
                s.push('\n');
            }
        }
        s
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Series coefficients can exceed `i64`; those are written as strings.
pub fn integer(n: i128) -> Value {
    match i64::try_from(n) {
        Ok(small) => small.into(),
        Err(_) => Value::String(n.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use koszulkit_core::graded::{BiDegree, Variance};

    fn sample() -> OutputTable {
        let b = TruncationBounds::new(3, 9).unwrap();
        let dims = BigradedDims::from_entries(Variance::Homological, b, [(BiDegree::new(2, 6), 1), (BiDegree::new(1, 3), 1)]);
        let mut out = OutputTable::new("pi", b);
        out.meta("koszul", json!("KoszulUpTo")).table(Table::from_dims("rows", &dims, "degree", 0));
        out
    }

    #[test]
    fn json_keeps_insertion_order_and_sorted_rows() {
        let text = sample().render_json();
        let keys: Vec<usize> = ["\"command\"", "\"bounds\"", "\"koszul\"", "\"rows\""].iter().map(|k| text.find(k).unwrap()).collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]));
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["rows"][0], json!({"weight": 1, "degree": 3, "dim": 1}));
        assert_eq!(v["rows"][1], json!({"weight": 2, "degree": 6, "dim": 1}));
    }

    #[test]
    fn tsv_layout() {
        assert_eq!(
            sample().render_tsv(),
            "# command\tpi\n# bounds\t3\t9\n# koszul\tKoszulUpTo\n## rows\nweight\tdegree\tdim\n1\t3\t1\n2\t6\t1\n"
        );
    }

    #[test]
    fn wide_integers_become_strings() {
        assert_eq!(integer(-5), json!(-5));
        assert_eq!(integer(i128::from(i64::MAX) + 1), json!("9223372036854775808"));
    }
}
