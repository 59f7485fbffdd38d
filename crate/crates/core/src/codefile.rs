//! The on-disk code format.
//!
//! ```text
//! PRUFER v1 method=<treepart|scesor|none> scheme=<raw|dcc|pcc|lcc>
//! code: <token> <token> ...
//! L: <label> ...          (only when the pendant list is nonempty)
//! last: <                 (only when the final edge carries a direction)
//! ```
//!
//! Each token is `b` or `b^k`, optionally prefixed by a direction mark
//! (`<` the edge converges to this label, `>` it diverges from it) and
//! optionally suffixed by `*`, the junction mark. The `last:` line records
//! the orientation of the edge formed by the final vertex pair, which has no
//! token of its own: `>` ascending (smaller label to larger), `<` descending.
//! Files are UTF-8 with LF line endings.

use crate::error::{Error, Result};
use crate::label::Label;
use crate::prufer::{LastEdgeDir, PruferCode, Scheme, TokenDir};
use crate::tree::Method;

/// Renders a code in the exact file format.
pub fn serialize(code: &PruferCode) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "PRUFER v1 method={} scheme={}\n",
        code.method.as_str(),
        code.scheme.as_str()
    ));
    out.push_str("code:");
    for (i, token) in code.tokens().iter().enumerate() {
        out.push(' ');
        if let Some(marks) = code.direction_marks() {
            match marks[i] {
                Some(TokenDir::Converging) => out.push('<'),
                Some(TokenDir::Diverging) => out.push('>'),
                None => {}
            }
        }
        out.push_str(&token.to_string());
        if let Some(marks) = code.junction_marks() {
            if marks[i] {
                out.push('*');
            }
        }
    }
    out.push('\n');
    if !code.pendant_list().is_empty() {
        out.push_str("L:");
        for label in code.pendant_list() {
            out.push(' ');
            out.push_str(&label.to_string());
        }
        out.push('\n');
    }
    match code.last_edge_dir() {
        Some(LastEdgeDir::Ascending) => out.push_str("last: >\n"),
        Some(LastEdgeDir::Descending) => out.push_str("last: <\n"),
        None => {}
    }
    out
}

/// Parses a code file; errors carry the byte offset of the offending input.
pub fn parse(text: &str) -> Result<PruferCode> {
    let mut offset = 0usize;
    let mut lines = Vec::new();
    for line in text.split_inclusive('\n') {
        lines.push((offset, line.strip_suffix('\n').unwrap_or(line)));
        offset += line.len();
    }
    let mut lines = lines.into_iter().filter(|(_, l)| !l.trim().is_empty());

    let (head_off, header) = lines.next().ok_or_else(|| err(0, "empty code file"))?;
    let (method, scheme) = parse_header(head_off, header)?;

    let (code_off, code_line) = lines
        .next()
        .ok_or_else(|| err(text.len(), "missing `code:` line"))?;
    let rest = code_line
        .strip_prefix("code:")
        .ok_or_else(|| err(code_off, "expected `code:` line"))?;
    let mut tokens = Vec::new();
    let mut junctions = Vec::new();
    let mut directions = Vec::new();
    let mut cursor = code_off + "code:".len();
    for word in rest.split(' ') {
        if !word.is_empty() {
            let parsed = parse_token(cursor, word)?;
            tokens.push(parsed.label);
            junctions.push(parsed.junction);
            directions.push(parsed.direction);
        }
        cursor += word.len() + 1;
    }

    let mut pendant_list = Vec::new();
    let mut last_edge = None;
    for (line_off, line) in lines {
        if let Some(rest) = line.strip_prefix("L:") {
            let mut cursor = line_off + 2;
            for word in rest.split(' ') {
                if !word.is_empty() {
                    let label: Label = word
                        .parse()
                        .map_err(|e: String| err(cursor, &e))?;
                    if !label.is_replica() {
                        return Err(err(cursor, "pendant list entries must be replica labels"));
                    }
                    pendant_list.push(label);
                }
                cursor += word.len() + 1;
            }
        } else if let Some(rest) = line.strip_prefix("last:") {
            last_edge = Some(match rest.trim() {
                ">" => LastEdgeDir::Ascending,
                "<" => LastEdgeDir::Descending,
                other => {
                    return Err(err(
                        line_off,
                        &format!("expected `<` or `>` after `last:`, found `{other}`"),
                    ))
                }
            });
        } else {
            return Err(err(line_off, &format!("unrecognized line `{line}`")));
        }
    }

    let mut code = PruferCode::new(method, scheme, tokens, pendant_list);
    if junctions.iter().any(|&j| j) {
        code.set_junction_marks(junctions);
    }
    if directions.iter().any(Option::is_some) || last_edge.is_some() {
        code.set_direction_marks(directions, last_edge);
    }
    Ok(code)
}

fn parse_header(offset: usize, line: &str) -> Result<(Method, Scheme)> {
    let mut words = line.split_whitespace();
    if words.next() != Some("PRUFER") || words.next() != Some("v1") {
        return Err(err(offset, "expected header `PRUFER v1 method=... scheme=...`"));
    }
    let mut method = None;
    let mut scheme = None;
    for word in words {
        if let Some(value) = word.strip_prefix("method=") {
            method = Method::parse(value);
            if method.is_none() {
                return Err(err(offset, &format!("unknown method `{value}`")));
            }
        } else if let Some(value) = word.strip_prefix("scheme=") {
            scheme = Scheme::parse(value);
            if scheme.is_none() {
                return Err(err(offset, &format!("unknown scheme `{value}`")));
            }
        } else {
            return Err(err(offset, &format!("unexpected header field `{word}`")));
        }
    }
    match (method, scheme) {
        (Some(m), Some(s)) => Ok((m, s)),
        _ => Err(err(offset, "header must set both method= and scheme=")),
    }
}

struct ParsedToken {
    label: Label,
    junction: bool,
    direction: Option<TokenDir>,
}

fn parse_token(offset: usize, word: &str) -> Result<ParsedToken> {
    let mut rest = word;
    let direction = if let Some(r) = rest.strip_prefix('<') {
        rest = r;
        Some(TokenDir::Converging)
    } else if let Some(r) = rest.strip_prefix('>') {
        rest = r;
        Some(TokenDir::Diverging)
    } else {
        None
    };
    let junction = if let Some(r) = rest.strip_suffix('*') {
        rest = r;
        true
    } else {
        false
    };
    let label: Label = rest.parse().map_err(|e: String| err(offset, &e))?;
    Ok(ParsedToken {
        label,
        junction,
        direction,
    })
}

fn err(offset: usize, message: &str) -> Error {
    Error::CodeFile {
        offset,
        message: message.to_string(),
    }
}
