//! Task records and their text / CSV renderings. Nothing here depends on
//! wall-clock time, so identical inputs give byte-identical output.

use std::fmt::{self, Write as _};

use mpcode::RMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// The task could not be carried out (bad reference, budget, ...).
    Error,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Error => "ERROR",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaskRecord {
    pub index: usize,
    pub kind: String,
    pub label: String,
    pub status: Status,
    pub fields: Vec<(String, String)>,
    pub matrices: Vec<(String, Vec<Vec<String>>)>,
    pub notes: Vec<String>,
}

impl TaskRecord {
    pub fn new(index: usize, kind: &str, label: &str) -> Self {
        TaskRecord {
            index,
            kind: kind.to_string(),
            label: label.to_string(),
            status: Status::Pass,
            fields: Vec::new(),
            matrices: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn field(&mut self, key: &str, value: impl ToString) {
        self.fields.push((key.to_string(), value.to_string()));
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn matrix(&mut self, key: &str, m: &RMatrix) {
        let rows = (0..m.rows())
            .map(|i| (0..m.cols()).map(|j| m.format_entry(i, j)).collect())
            .collect();
        self.matrices.push((key.to_string(), rows));
    }

    /// Records a failed check; the task keeps running.
    pub fn fail(&mut self, note: impl ToString) {
        if self.status == Status::Pass {
            self.status = Status::Fail;
        }
        self.notes.push(note.to_string());
    }

    pub fn error(&mut self, note: impl ToString) {
        self.status = Status::Error;
        self.notes.push(note.to_string());
    }

    pub fn note(&mut self, note: impl ToString) {
        self.notes.push(note.to_string());
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AnalysisReport {
    pub records: Vec<TaskRecord>,
}

impl AnalysisReport {
    pub fn all_passed(&self) -> bool {
        self.records.iter().all(|r| r.status == Status::Pass)
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            let _ = writeln!(out, "task {} {} {}: {}", r.index, r.kind, r.label, r.status);
            for (k, v) in &r.fields {
                let _ = writeln!(out, "  {k} = {v}");
            }
            for (name, rows) in &r.matrices {
                let _ = writeln!(out, "  {name}:");
                let width = rows.iter().flatten().map(String::len).max().unwrap_or(0);
                for row in rows {
                    let cells: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
                    let _ = writeln!(out, "    [ {} ]", cells.join("  "));
                }
                if rows.is_empty() {
                    let _ = writeln!(out, "    (no rows)");
                }
            }
            for n in &r.notes {
                let _ = writeln!(out, "  note: {n}");
            }
        }
        let passed = self.records.iter().filter(|r| r.status == Status::Pass).count();
        let _ = writeln!(out, "summary: {passed}/{} tasks passed", self.records.len());
        out
    }

    /// One header row, then one row per field, matrix row or note.
    pub fn render_csv(&self) -> String {
        fn put(w: &mut csv::Writer<Vec<u8>>, r: &TaskRecord, key: &str, value: &str) {
            let idx = r.index.to_string();
            let status = r.status.to_string();
            w.write_record([&idx, &r.kind, &r.label, &status, key, value])
                .expect("writing to memory");
        }
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["task", "kind", "label", "status", "key", "value"])
            .expect("writing to memory");
        for r in &self.records {
            put(&mut w, r, "status", &r.status.to_string());
            for (k, v) in &r.fields {
                put(&mut w, r, k, v);
            }
            for (name, rows) in &r.matrices {
                for (i, cells) in rows.iter().enumerate() {
                    put(&mut w, r, &format!("{name}[{i}]"), &cells.join(" "));
                }
            }
            for n in &r.notes {
                put(&mut w, r, "note", n);
            }
        }
        String::from_utf8(w.into_inner().expect("flush to memory")).expect("csv is utf-8")
    }
}

/// A matrix as CSV: a header row `rows,cols,ring` with its values, then
/// the entries one matrix row per line.
pub fn matrix_csv(m: &RMatrix) -> String {
    let mut w = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
    let ring = m.ring().to_string();
    let (rows, cols) = (m.rows().to_string(), m.cols().to_string());
    w.write_record(["rows", "cols", "ring"]).expect("writing to memory");
    w.write_record([rows.as_str(), cols.as_str(), ring.as_str()]).expect("writing to memory");
    for i in 0..m.rows() {
        let cells: Vec<String> = (0..m.cols()).map(|j| m.format_entry(i, j)).collect();
        w.write_record(&cells).expect("writing to memory");
    }
    String::from_utf8(w.into_inner().expect("flush to memory")).expect("csv is utf-8")
}
