//! Decoding and encoding of table cells.
//!
//! Inside a cell a backslash makes the next character literal, so `\|`,
//! `\[` and `\*` can appear in values. In expectation rows an unescaped `[`
//! starts an adornment (`[tooltip "..."]`, `[color red]`) and a cell that is
//! exactly `*` is ignored.

use crate::model::{CellExpectation, Color};

use super::lexer::unescape;

/// Trims and unescapes a plain cell.
pub fn decode_cell(raw: &str) -> String {
    let mut out = String::new();
    let mut chars = raw.trim().chars();
    while let Some(c) = chars.next() {
        if c == '\\' {
            match chars.next() {
                Some(n) => out.push(n),
                None => out.push('\\'),
            }
        } else {
            out.push(c);
        }
    }
    out
}

/// Escapes a value for printing inside a cell.
pub fn encode_cell(value: &str) -> String {
    if value == "*" {
        return "\\*".to_string();
    }
    let mut out = String::with_capacity(value.len());
    for c in value.chars() {
        if matches!(c, '\\' | '|' | '[') {
            out.push('\\');
        }
        out.push(c);
    }
    out
}

/// Escapes a string for a double-quoted literal inside a cell.
pub fn encode_cell_string(value: &str) -> String {
    let mut out = String::from("\"");
    for c in value.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            '\r' => out.push_str("\\r"),
            '|' => out.push_str("\\|"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

/// Error inside a cell; `at` is a byte offset into the raw cell text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellError {
    pub at: usize,
    pub message: String,
}

fn cell_error(at: usize, message: impl Into<String>) -> CellError {
    CellError { at, message: message.into() }
}

pub fn parse_expectation_cell(raw: &str) -> Result<CellExpectation, CellError> {
    if raw.trim() == "*" {
        return Ok(CellExpectation::ignored());
    }
    let bytes: Vec<(usize, char)> = raw.char_indices().collect();
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i].1 {
            '\\' => i += 2,
            '[' => break,
            _ => i += 1,
        }
    }
    let value_end = bytes.get(i).map_or(raw.len(), |(o, _)| *o);
    let value_raw = &raw[..value_end];
    let mut cell = CellExpectation::text(decode_cell(value_raw));
    if value_raw.trim() == "*" {
        return Err(cell_error(0, "an ignored cell cannot carry adornments"));
    }

    let mut scan = Scanner { chars: &bytes, pos: i, len: raw.len() };
    loop {
        scan.skip_ws();
        if scan.done() {
            break;
        }
        let open = scan.offset();
        if !scan.eat('[') {
            return Err(cell_error(open, "expected `[` to start a cell adornment"));
        }
        scan.skip_ws();
        let word_at = scan.offset();
        let word = scan.word();
        match word.as_str() {
            "tooltip" => {
                if cell.tooltip.is_some() {
                    return Err(cell_error(word_at, "duplicate tooltip"));
                }
                scan.skip_ws();
                cell.tooltip = Some(scan.string()?);
            }
            "color" => {
                if cell.color.is_some() {
                    return Err(cell_error(word_at, "duplicate color"));
                }
                scan.skip_ws();
                let at = scan.offset();
                let name = scan.word();
                match Color::from_name(&name) {
                    Some(color) => cell.color = Some(color),
                    None => return Err(cell_error(at, format!("unknown color `{name}`"))),
                }
            }
            "" => return Err(cell_error(word_at, "expected `tooltip` or `color`")),
            other => return Err(cell_error(word_at, format!("unknown cell adornment `{other}`"))),
        }
        scan.skip_ws();
        let close = scan.offset();
        if !scan.eat(']') {
            return Err(cell_error(close, "expected `]`"));
        }
    }
    Ok(cell)
}

pub fn encode_expectation_cell(cell: &CellExpectation) -> String {
    if cell.ignored {
        return "*".to_string();
    }
    let mut out = encode_cell(&cell.value);
    if let Some(tooltip) = &cell.tooltip {
        if !out.is_empty() {
            out.push(' ');
        }
        out.push_str("[tooltip ");
        out.push_str(&encode_cell_string(tooltip));
        out.push(']');
    }
    if let Some(color) = cell.color {
        if !out.is_empty() {
            out.push(' ');
        }
        out.push_str("[color ");
        out.push_str(color.name());
        out.push(']');
    }
    out
}

struct Scanner<'c> {
    chars: &'c [(usize, char)],
    pos: usize,
    len: usize,
}

impl Scanner<'_> {
    fn done(&self) -> bool {
        self.pos >= self.chars.len()
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.len, |(o, _)| *o)
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|(_, c)| *c)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn word(&mut self) -> String {
        let mut out = String::new();
        while let Some(c) = self.peek().filter(|c| c.is_ascii_alphanumeric() || *c == '_') {
            out.push(c);
            self.pos += 1;
        }
        out
    }

    fn string(&mut self) -> Result<String, CellError> {
        let open = self.offset();
        if !self.eat('"') {
            return Err(cell_error(open, "expected a string literal"));
        }
        let mut out = String::new();
        loop {
            let at = self.offset();
            match self.peek() {
                None => return Err(cell_error(open, "unterminated string literal")),
                Some('"') => {
                    self.pos += 1;
                    return Ok(out);
                }
                Some('\\') => {
                    self.pos += 1;
                    let esc = self.peek().ok_or_else(|| cell_error(open, "unterminated string literal"))?;
                    self.pos += 1;
                    match unescape(esc) {
                        Some(u) => out.push(u),
                        None => return Err(cell_error(at, format!("unknown escape `\\{esc}`"))),
                    }
                }
                Some(c) => {
                    self.pos += 1;
                    out.push(c);
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plain_cells_trim_and_unescape() {
        assert_eq!(decode_cell("  New Task "), "New Task");
        assert_eq!(decode_cell("a\\|b"), "a|b");
        assert_eq!(decode_cell("   "), "");
        assert_eq!(decode_cell("\\*"), "*");
    }

    #[test]
    fn star_means_ignored() {
        assert_eq!(parse_expectation_cell(" * "), Ok(CellExpectation::ignored()));
        assert_eq!(parse_expectation_cell(" \\* ").unwrap().value, "*");
    }

    #[test]
    fn adornments() {
        let cell = parse_expectation_cell(" 04.01.2024 [tooltip \"4th January 2024\"] [color red] ").unwrap();
        assert_eq!(cell.value, "04.01.2024");
        assert_eq!(cell.tooltip.as_deref(), Some("4th January 2024"));
        assert_eq!(cell.color, Some(Color::Red));
        assert!(!cell.ignored);
    }

    #[test]
    fn empty_cell_is_empty_string() {
        let cell = parse_expectation_cell("  ").unwrap();
        assert_eq!(cell, CellExpectation::text(""));
    }

    #[test]
    fn bad_adornments() {
        assert!(parse_expectation_cell("x [colour red]").is_err());
        assert!(parse_expectation_cell("x [color pink]").is_err());
        assert!(parse_expectation_cell("x [tooltip \"a\"").is_err());
        assert!(parse_expectation_cell("* [color red]").is_err());
        assert!(parse_expectation_cell("x [color red] [color blue]").is_err());
    }

    #[test]
    fn encode_then_parse() {
        let cells = [
            CellExpectation::text("a|b[c]\\"),
            CellExpectation::text("*"),
            CellExpectation {
                ignored: false,
                value: String::new(),
                tooltip: Some("t \"q\" |".into()),
                color: Some(Color::Uncolored),
            },
            CellExpectation::ignored(),
        ];
        for cell in cells {
            assert_eq!(parse_expectation_cell(&encode_expectation_cell(&cell)).unwrap(), cell);
        }
    }
}
