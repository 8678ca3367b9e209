//! Parsing of color lists, integer ranges and sweep grids.

use levelrank::{Error, Result, YoungDiagram};

fn parse_u32(s: &str) -> Result<u32> {
    s.trim().parse().map_err(|_| Error::InvalidArgument(format!("'{s}' is not a non-negative integer")))
}

/// Comma-separated row lengths; "" and "0" are the empty diagram.
pub fn parse_rows(s: &str) -> Result<YoungDiagram> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(YoungDiagram::empty());
    }
    let rows = s.split(',').map(parse_u32).collect::<Result<Vec<_>>>()?.into_iter().filter(|&r| r > 0).collect();
    YoungDiagram::new(rows)
}

/// One color per component. A ':' separates components given as row
/// lists; without one, SU(2) colors are comma-separated twice-spins and
/// other ranks take the whole string as a single row list.
pub fn parse_colors(s: &str, n: u32) -> Result<Vec<YoungDiagram>> {
    if s.contains(':') {
        s.split(':').map(parse_rows).collect()
    } else if n == 2 {
        s.split(',').map(|x| parse_u32(x).map(YoungDiagram::row)).collect()
    } else {
        Ok(vec![parse_rows(s)?])
    }
}

/// Canonical spelling: components joined by ':', rows by ','.
pub fn format_colors(colors: &[YoungDiagram]) -> String {
    colors
        .iter()
        .map(|c| {
            if c.is_empty() {
                "0".to_string()
            } else {
                c.rows().iter().map(u32::to_string).collect::<Vec<_>>().join(",")
            }
        })
        .collect::<Vec<_>>()
        .join(":")
}

/// Comma-separated integers.
pub fn parse_list(s: &str) -> Result<Vec<u32>> {
    s.split(',').map(parse_u32).collect()
}

/// "a", "a..b", "a..=b" (both inclusive) or "a,b,c". A reversed range is empty.
pub fn parse_range(s: &str) -> Result<Vec<u32>> {
    let s = s.trim();
    if let Some((lo, hi)) = s.split_once("..") {
        let lo = parse_u32(lo)?;
        let hi = parse_u32(hi.trim_start_matches('='))?;
        return Ok((lo..=hi).collect());
    }
    parse_list(s)
}

/// "n=2..5,k=2..5" into the two ranges.
pub fn parse_grid(s: &str) -> Result<(Vec<u32>, Vec<u32>)> {
    let mut n = None;
    let mut k = None;
    // Split on the commas that start a new "key=" item.
    let mut items: Vec<String> = Vec::new();
    for part in s.split(',') {
        if part.contains('=') && !part.trim_start().starts_with('=') || items.is_empty() {
            items.push(part.to_string());
        } else if let Some(last) = items.last_mut() {
            last.push(',');
            last.push_str(part);
        }
    }
    for item in items {
        let (key, value) =
            item.split_once('=').ok_or_else(|| Error::InvalidArgument(format!("grid item '{item}' lacks '='")))?;
        let range = parse_range(value)?;
        match key.trim() {
            "n" => n = Some(range),
            "k" => k = Some(range),
            other => return Err(Error::InvalidArgument(format!("unknown grid axis '{other}'"))),
        }
    }
    match (n, k) {
        (Some(n), Some(k)) => Ok((n, k)),
        _ => Err(Error::InvalidArgument("grid needs both n and k".into())),
    }
}
