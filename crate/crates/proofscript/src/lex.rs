//! Character-level scanning with opaque regions.
//!
//! Quoted strings, cartouches and comments are opaque: keywords inside them
//! never start steps or open blocks, and whitespace inside them is preserved
//! verbatim by normalization.

/// A lexical unit produced by [`scan_words`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Word<'a> {
    pub text: &'a str,
    /// Byte offset into the scanned string.
    pub offset: usize,
    pub kind: WordKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WordKind {
    /// Plain token outside any opaque region. Parentheses are single-char tokens.
    Plain,
    /// A complete quoted string or cartouche, delimiters included.
    Quoted,
    /// A complete `(* ... *)` comment, delimiters included.
    Comment,
    /// A line break outside opaque regions.
    Newline,
}

const ASCII_OPEN: &str = "\\<open>";
const ASCII_CLOSE: &str = "\\<close>";

/// If an opaque region starts at byte `at`, return `(end_exclusive, kind)`.
/// Unterminated regions extend to the end of input.
fn opaque_end(text: &str, at: usize) -> Option<(usize, WordKind)> {
    let rest = &text[at..];
    if rest.starts_with('"') {
        let mut it = rest.char_indices().skip(1).peekable();
        while let Some((i, c)) = it.next() {
            match c {
                '\\' => {
                    it.next();
                }
                '"' => return Some((at + i + 1, WordKind::Quoted)),
                _ => {}
            }
        }
        return Some((text.len(), WordKind::Quoted));
    }
    if rest.starts_with("(*") {
        let mut depth = 1usize;
        let mut i = 2;
        let b = rest.as_bytes();
        while i < b.len() {
            if rest[i..].starts_with("(*") {
                depth += 1;
                i += 2;
            } else if rest[i..].starts_with("*)") {
                depth -= 1;
                i += 2;
                if depth == 0 {
                    return Some((at + i, WordKind::Comment));
                }
            } else {
                i += rest[i..].chars().next().map_or(1, char::len_utf8);
            }
        }
        return Some((text.len(), WordKind::Comment));
    }
    for (open, close) in [(ASCII_OPEN, ASCII_CLOSE), ("\u{2039}", "\u{203a}"), ("\u{27e8}", "\u{27e9}")] {
        if rest.starts_with(open) {
            let mut depth = 1usize;
            let mut i = open.len();
            while i < rest.len() {
                if rest[i..].starts_with(open) {
                    depth += 1;
                    i += open.len();
                } else if rest[i..].starts_with(close) {
                    depth -= 1;
                    i += close.len();
                    if depth == 0 {
                        return Some((at + i, WordKind::Quoted));
                    }
                } else {
                    i += rest[i..].chars().next().map_or(1, char::len_utf8);
                }
            }
            return Some((text.len(), WordKind::Quoted));
        }
    }
    None
}

/// Scan `text` into words, opaque regions and newlines.
pub fn scan_words(text: &str) -> Vec<Word<'_>> {
    let mut out = Vec::new();
    let mut i = 0;
    let bytes = text.len();
    while i < bytes {
        let c = text[i..].chars().next().unwrap();
        if c == '\n' {
            out.push(Word { text: "\n", offset: i, kind: WordKind::Newline });
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += c.len_utf8();
            continue;
        }
        if let Some((end, kind)) = opaque_end(text, i) {
            out.push(Word { text: &text[i..end], offset: i, kind });
            i = end;
            continue;
        }
        if c == '(' || c == ')' {
            out.push(Word { text: &text[i..i + 1], offset: i, kind: WordKind::Plain });
            i += 1;
            continue;
        }
        // Plain word: run until whitespace, paren or opaque opener.
        let start = i;
        while i < bytes {
            let c = text[i..].chars().next().unwrap();
            if c.is_whitespace() || c == '(' || c == ')' || c == '"' || opaque_opener_at(text, i) {
                break;
            }
            i += c.len_utf8();
        }
        if i > start {
            out.push(Word { text: &text[start..i], offset: start, kind: WordKind::Plain });
        } else {
            // Defensive: never loop on a zero-width token.
            i += c.len_utf8();
        }
    }
    out
}

fn opaque_opener_at(text: &str, at: usize) -> bool {
    let rest = &text[at..];
    rest.starts_with('"')
        || rest.starts_with("(*")
        || rest.starts_with(ASCII_OPEN)
        || rest.starts_with('\u{2039}')
        || rest.starts_with('\u{27e8}')
}

/// Collapse whitespace runs outside opaque regions to single spaces, keep
/// opaque content verbatim, and trim the ends.
pub fn normalize_text(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    let mut i = 0;
    let mut pending_space = false;
    while i < text.len() {
        let c = text[i..].chars().next().unwrap();
        if c.is_whitespace() {
            pending_space = !out.is_empty();
            i += c.len_utf8();
            continue;
        }
        if pending_space {
            out.push(' ');
            pending_space = false;
        }
        if let Some((end, _)) = opaque_end(text, i) {
            out.push_str(&text[i..end]);
            i = end;
        } else {
            out.push(c);
            i += c.len_utf8();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quotes_are_opaque() {
        let ws = scan_words(r#"have "proof by qed" by auto"#);
        let kinds: Vec<_> = ws.iter().map(|w| (w.text, w.kind)).collect();
        assert_eq!(
            kinds,
            vec![
                ("have", WordKind::Plain),
                (r#""proof by qed""#, WordKind::Quoted),
                ("by", WordKind::Plain),
                ("auto", WordKind::Plain),
            ]
        );
    }

    #[test]
    fn nested_comments_and_cartouches() {
        let ws = scan_words("(* a (* b *) c *) \\<open>x \\<open>y\\<close> z\\<close> \u{27e8}\u{ac} A\u{27e9}");
        assert_eq!(ws.len(), 3);
        assert_eq!(ws[0].kind, WordKind::Comment);
        assert_eq!(ws[1].kind, WordKind::Quoted);
        assert_eq!(ws[2].kind, WordKind::Quoted);
    }

    #[test]
    fn parens_split() {
        let ws = scan_words("proof (rule classical)");
        let texts: Vec<_> = ws.iter().map(|w| w.text).collect();
        assert_eq!(texts, vec!["proof", "(", "rule", "classical", ")"]);
    }

    #[test]
    fn normalize_preserves_quoted_newlines() {
        let s = "have  \"a\n  b\"   \n by auto";
        assert_eq!(normalize_text(s), "have \"a\n  b\" by auto");
    }

    #[test]
    fn unterminated_quote_runs_to_end() {
        let ws = scan_words("show \"unclosed");
        assert_eq!(ws.len(), 2);
        assert_eq!(ws[1].kind, WordKind::Quoted);
    }
}
