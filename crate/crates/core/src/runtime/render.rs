use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::analyzer::{ResolvedBody, ResolvedContext};
use crate::config::ContextFormat;
use crate::model::DataTable;

#[derive(Debug, Error)]
pub enum RenderError {
    #[error("cannot read context file `{}`: {source}", path.display())]
    File { path: PathBuf, source: std::io::Error },
}

/// Renders a resolved context. Only data tables depend on `format`; file
/// bodies are read relative to `base_dir`.
pub fn render_context(ctx: &ResolvedContext, format: ContextFormat, base_dir: &Path) -> Result<String, RenderError> {
    match &ctx.body {
        ResolvedBody::DataTable(t) => Ok(render_table(t, format)),
        ResolvedBody::Text(s) | ResolvedBody::Xml(s) => Ok(s.clone()),
        ResolvedBody::File(p) => {
            let path = base_dir.join(p);
            std::fs::read_to_string(&path).map_err(|source| RenderError::File { path, source })
        }
    }
}

pub fn render_table(table: &DataTable, format: ContextFormat) -> String {
    match format {
        ContextFormat::Multiline => render_multiline(table),
        ContextFormat::Json => render_json(table),
        ContextFormat::Xml => render_xml(table),
    }
}

/// One line per row, cells joined by ` | `. Inside a cell `\` and `|` are
/// backslash-escaped, so splitting on unescaped pipes and trimming recovers
/// the grid.
pub fn render_multiline(table: &DataTable) -> String {
    let line = |cells: &[String]| {
        cells.iter().map(|c| c.replace('\\', "\\\\").replace('|', "\\|")).collect::<Vec<_>>().join(" | ")
    };
    std::iter::once(&table.header).chain(&table.rows).map(|r| line(r)).collect::<Vec<_>>().join("\n")
}

/// An array with one object per row, keys in header order.
pub fn render_json(table: &DataTable) -> String {
    let key = |s: &str| serde_json::to_string(s).expect("strings serialize");
    let objects: Vec<String> = table
        .rows
        .iter()
        .map(|row| {
            let fields: Vec<String> =
                table.header.iter().zip(row).map(|(h, v)| format!("{}:{}", key(h), key(v))).collect();
            format!("{{{}}}", fields.join(","))
        })
        .collect();
    format!("[{}]", objects.join(","))
}

/// `<rows>` with one `<row>` per data row and one attribute per column.
pub fn render_xml(table: &DataTable) -> String {
    let names: Vec<String> = table.header.iter().map(|h| xml_attribute_name(h)).collect();
    let mut out = String::from("<rows>");
    for row in &table.rows {
        out.push_str("<row");
        for (name, value) in names.iter().zip(row) {
            out.push_str(&format!(" {name}=\"{}\"", xml_escape(value)));
        }
        out.push_str("/>");
    }
    out.push_str("</rows>");
    out
}

/// Spaces become `_`; anything outside `[A-Za-z0-9_.-]` also becomes `_`,
/// and a name that would not start with a letter or `_` gets a `_` prefix.
pub fn xml_attribute_name(title: &str) -> String {
    let mut name: String = title
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() || matches!(c, '_' | '.' | '-') { c } else { '_' })
        .collect();
    if !name.starts_with(|c: char| c.is_ascii_alphabetic() || c == '_') {
        name.insert(0, '_');
    }
    name
}

/// Escapes an attribute value. Whitespace other than space is written as a
/// character reference because attribute normalization would fold it.
pub fn xml_escape(value: &str) -> String {
    let mut out = String::with_capacity(value.len());
    for c in value.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            '\t' => out.push_str("&#9;"),
            '\n' => out.push_str("&#10;"),
            '\r' => out.push_str("&#13;"),
            c => out.push(c),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use indexmap::IndexMap;
    use proptest::prelude::*;
    use quick_xml::events::Event;

    use super::*;

    fn table(header: &[&str], rows: &[&[&str]]) -> DataTable {
        DataTable {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: rows.iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect(),
        }
    }

    #[test]
    fn minimal_table() {
        let t = table(&["A"], &[&["x"]]);
        assert_eq!(render_json(&t), r#"[{"A":"x"}]"#);
        assert_eq!(render_xml(&t), r#"<rows><row A="x"/></rows>"#);
        assert_eq!(render_multiline(&t), "A\nx");
    }

    #[test]
    fn header_only_and_escapes() {
        let t = table(&["Due Date", "1st"], &[]);
        assert_eq!(render_json(&t), "[]");
        assert_eq!(render_xml(&t), "<rows></rows>");
        let t = table(&["Due Date", "a|b"], &[&["<&>", r"x\y"]]);
        assert_eq!(render_xml(&t), r#"<rows><row Due_Date="&lt;&amp;&gt;" a_b="x\y"/></rows>"#);
        assert_eq!(render_multiline(&t), "Due Date | a\\|b\n<&> | x\\\\y");
        assert_eq!(xml_attribute_name("1st"), "_1st");
        assert_eq!(xml_attribute_name(""), "_");
    }

    #[test]
    fn non_table_bodies_pass_through() {
        let ctx =
            ResolvedContext { name: crate::model::Ident::new("t").unwrap(), body: ResolvedBody::Xml("<a/>".into()) };
        for f in [ContextFormat::Multiline, ContextFormat::Json, ContextFormat::Xml] {
            assert_eq!(render_context(&ctx, f, Path::new(".")).unwrap(), "<a/>");
        }
        let file = ResolvedContext {
            name: crate::model::Ident::new("f").unwrap(),
            body: ResolvedBody::File("missing.txt".into()),
        };
        let err = render_context(&file, ContextFormat::Json, Path::new("/nonexistent")).unwrap_err();
        assert!(err.to_string().contains("/nonexistent/missing.txt"));
    }

    /// Splits on unescaped pipes, trims, then unescapes.
    fn parse_multiline(text: &str) -> Vec<Vec<String>> {
        text.split('\n')
            .map(|line| {
                let mut cells = vec![String::new()];
                let mut chars = line.chars();
                while let Some(c) = chars.next() {
                    match c {
                        '\\' => {
                            let cell = cells.last_mut().unwrap();
                            cell.push('\u{0}');
                            cell.push(chars.next().unwrap());
                        }
                        '|' => cells.push(String::new()),
                        c => cells.last_mut().unwrap().push(c),
                    }
                }
                // Escaped characters are protected from trimming by the NUL marker.
                cells.iter().map(|c| c.trim_matches(' ').replace('\u{0}', "")).collect()
            })
            .collect()
    }

    fn parse_json(text: &str, header: &[String]) -> Vec<Vec<String>> {
        let rows: Vec<IndexMap<String, String>> = serde_json::from_str(text).unwrap();
        rows.into_iter()
            .map(|obj| {
                let keys: Vec<&String> = obj.keys().collect();
                assert_eq!(keys, header.iter().collect::<Vec<_>>());
                obj.into_values().collect()
            })
            .collect()
    }

    fn parse_xml(text: &str, header: &[String]) -> Vec<Vec<String>> {
        let names: Vec<String> = header.iter().map(|h| xml_attribute_name(h)).collect();
        let mut reader = quick_xml::Reader::from_str(text);
        let mut rows = Vec::new();
        loop {
            match reader.read_event().unwrap() {
                Event::Empty(e) if e.name().as_ref() == b"row" => {
                    let mut row = Vec::new();
                    for (i, a) in e.attributes().enumerate() {
                        let a = a.unwrap();
                        assert_eq!(std::str::from_utf8(a.key.as_ref()).unwrap(), names[i]);
                        row.push(a.unescape_value().unwrap().into_owned());
                    }
                    rows.push(row);
                }
                Event::Eof => break,
                _ => {}
            }
        }
        rows
    }

    fn cell() -> impl Strategy<Value = String> {
        "[ -~]{0,8}".prop_map(|s| s.trim().to_string())
    }

    fn grid() -> impl Strategy<Value = DataTable> {
        (1usize..=6, 0usize..=6).prop_flat_map(|(cols, rows)| {
            let header = proptest::collection::btree_set("[A-Za-z][A-Za-z0-9]{0,5}", cols)
                .prop_map(|s| s.into_iter().collect::<Vec<_>>());
            let body = proptest::collection::vec(proptest::collection::vec(cell(), cols), rows);
            (header, body).prop_map(|(header, rows)| DataTable { header, rows })
        })
    }

    proptest! {
        #[test]
        fn three_renderings_agree(t in grid()) {
            let mut grid = vec![t.header.clone()];
            grid.extend(t.rows.clone());
            prop_assert_eq!(parse_multiline(&render_multiline(&t)), grid);
            prop_assert_eq!(parse_json(&render_json(&t), &t.header), t.rows.clone());
            prop_assert_eq!(parse_xml(&render_xml(&t), &t.header), t.rows.clone());
        }
    }
}
