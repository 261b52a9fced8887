//! Table renderings: JSON, CSV and Markdown.

use std::io::{self, Write};

use cayley_dickson::analysis::MultiplicationTable;
use cayley_dickson::SignedIndex;
use serde::ser::{SerializeSeq, SerializeStruct, Serializer};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Markdown,
}

/// Decimal, or `0b`-prefixed binary padded to the level.
#[derive(Clone, Copy, Debug)]
pub struct IndexStyle {
    pub binary: bool,
    pub level: u32,
}

impl IndexStyle {
    pub fn render(&self, i: u32) -> String {
        if self.binary {
            format!("0b{:0width$b}", i, width = self.level.max(1) as usize)
        } else {
            i.to_string()
        }
    }
}

struct Cell(SignedIndex);

impl Serialize for Cell {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Cell", 2)?;
        st.serialize_field("s", &self.0.sign.as_i8())?;
        st.serialize_field("i", &self.0.index.get())?;
        st.end()
    }
}

struct Row<'a>(&'a [SignedIndex]);

impl Serialize for Row<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for &e in self.0 {
            seq.serialize_element(&Cell(e))?;
        }
        seq.end()
    }
}

struct Rows<'a>(&'a MultiplicationTable);

impl Serialize for Rows<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.0.rows().map(Row))
    }
}

/// `{"n": .., "kind": .., "entries": [[{"s": +-1, "i": ..}, ..], ..]}` with
/// `entries[A][B]` holding `e_A e_B`.
struct TableDocument<'a>(&'a MultiplicationTable);

impl Serialize for TableDocument<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let sig = self.0.signature();
        let mut st = s.serialize_struct("Table", 3)?;
        st.serialize_field("n", &sig.level())?;
        st.serialize_field("kind", &sig.kind_label())?;
        st.serialize_field("entries", &Rows(self.0))?;
        st.end()
    }
}

pub fn write_table(out: &mut dyn Write, table: &MultiplicationTable, format: Format, binary: bool) -> io::Result<()> {
    let style = IndexStyle {
        binary,
        level: table.signature().level(),
    };
    match format {
        Format::Json => {
            serde_json::to_writer(&mut *out, &TableDocument(table))?;
            writeln!(out)
        }
        Format::Csv => write_grid(out, table, style, GridStyle::Csv),
        Format::Markdown => write_grid(out, table, style, GridStyle::Markdown),
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum GridStyle {
    Csv,
    Markdown,
}

fn write_grid(out: &mut dyn Write, table: &MultiplicationTable, style: IndexStyle, grid: GridStyle) -> io::Result<()> {
    let dim = table.dim() as u32;
    let line = |cells: Vec<String>| match grid {
        GridStyle::Csv => cells.join(","),
        GridStyle::Markdown => format!("| {} |", cells.join(" | ")),
    };
    let header: Vec<String> = std::iter::once("A\\B".to_string())
        .chain((0..dim).map(|b| style.render(b)))
        .collect();
    writeln!(out, "{}", line(header))?;
    if grid == GridStyle::Markdown {
        writeln!(out, "{}", line(vec!["---".to_string(); dim as usize + 1]))?;
    }
    for (a, row) in table.rows().enumerate() {
        let cells = std::iter::once(style.render(a as u32)).chain(row.iter().map(|e| {
            let idx = style.render(e.index.get());
            match grid {
                GridStyle::Csv => format!("{}{idx}", e.sign.symbol()),
                GridStyle::Markdown => format!("{}e_{idx}", e.sign.symbol()),
            }
        }));
        writeln!(out, "{}", line(cells.collect()))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use cayley_dickson::analysis::{build_table, DEFAULT_TABLE_CAP};
    use cayley_dickson::AlgebraSignature;

    fn render(n: u32, format: Format, binary: bool) -> String {
        let table = build_table(AlgebraSignature::standard(n).unwrap(), DEFAULT_TABLE_CAP).unwrap();
        let mut buf = Vec::new();
        write_table(&mut buf, &table, format, binary).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn complex_csv() {
        assert_eq!(render(1, Format::Csv, false), "A\\B,0,1\n0,+0,+1\n1,+1,-0\n");
    }

    #[test]
    fn complex_markdown() {
        assert_eq!(
            render(1, Format::Markdown, false),
            "| A\\B | 0 | 1 |\n| --- | --- | --- |\n| 0 | +e_0 | +e_1 |\n| 1 | +e_1 | -e_0 |\n"
        );
    }

    #[test]
    fn complex_json() {
        assert_eq!(
            render(1, Format::Json, false),
            "{\"n\":1,\"kind\":\"standard\",\"entries\":[[{\"s\":1,\"i\":0},{\"s\":1,\"i\":1}],[{\"s\":1,\"i\":1},{\"s\":-1,\"i\":0}]]}\n"
        );
    }

    #[test]
    fn binary_labels() {
        let csv = render(2, Format::Csv, true);
        assert_eq!(csv.lines().next().unwrap(), "A\\B,0b00,0b01,0b10,0b11");
        assert_eq!(csv.lines().nth(2).unwrap(), "0b01,+0b01,-0b00,+0b11,-0b10");
    }
}
