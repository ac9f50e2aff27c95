//! FASTA/FASTQ ingestion (plain or compressed) and FASTA output.

use std::io::Write;
use std::path::Path;

use needletail::errors::ParseErrorKind;

use crate::error::{Error, Result};
use crate::kmer::{validate_reads, NPolicy, Sequence};

/// Raw sequence strings of every record in a FASTA or FASTQ file.
/// Multi-line records are joined; qualities are ignored. An empty file
/// yields no records.
pub fn read_raw(path: &Path) -> Result<Vec<Vec<u8>>> {
    let parse_err = |e: needletail::errors::ParseError| Error::Parse {
        path: path.to_path_buf(),
        message: e.to_string(),
    };
    let mut reader = match needletail::parse_fastx_file(path) {
        Ok(r) => r,
        Err(e) if e.kind == ParseErrorKind::EmptyFile => return Ok(Vec::new()),
        Err(e) if e.kind == ParseErrorKind::Io => {
            return Err(Error::Io(std::io::Error::other(format!("{}: {}", path.display(), e))))
        }
        Err(e) => return Err(parse_err(e)),
    };
    let mut out = Vec::new();
    while let Some(rec) = reader.next() {
        out.push(rec.map_err(parse_err)?.seq().into_owned());
    }
    Ok(out)
}

/// Read and validate every record of every file.
pub fn read_sequences<P: AsRef<Path>>(paths: &[P], policy: NPolicy) -> Result<Vec<Sequence>> {
    let mut raw = Vec::new();
    for p in paths {
        raw.extend(read_raw(p.as_ref())?);
    }
    validate_reads(&raw, policy)
}

pub fn write_fasta_record<W: Write>(w: &mut W, header: &str, seq: &[u8]) -> std::io::Result<()> {
    writeln!(w, ">{header}")?;
    w.write_all(seq)?;
    writeln!(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    #[test]
    fn multiline_fasta_and_fastq() {
        let dir = tempfile::tempdir().unwrap();
        let fa = dir.path().join("r.fa");
        std::fs::write(&fa, ">a\nACG\nTT\n>b desc\nGG\n").unwrap();
        assert_eq!(read_raw(&fa).unwrap(), vec![b"ACGTT".to_vec(), b"GG".to_vec()]);

        let fq = dir.path().join("r.fq");
        std::fs::write(&fq, "@a\nACGTT\n+\nIIIII\n@b\nGG\n+\nII\n").unwrap();
        assert_eq!(read_raw(&fq).unwrap(), read_raw(&fa).unwrap());
    }

    #[test]
    fn gzip_is_transparent() {
        let dir = tempfile::tempdir().unwrap();
        let gz = dir.path().join("r.fq.gz");
        let mut enc =
            flate2::write::GzEncoder::new(std::fs::File::create(&gz).unwrap(), flate2::Compression::default());
        enc.write_all(b"@a\nACNGT\n+\nIIIII\n").unwrap();
        enc.finish().unwrap();
        let seqs = read_sequences(&[&gz], NPolicy::Split).unwrap();
        assert_eq!(seqs.len(), 2);
    }

    #[test]
    fn empty_file_has_no_records() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("empty.fa");
        std::fs::write(&p, "").unwrap();
        assert!(read_raw(&p).unwrap().is_empty());
        assert!(matches!(read_sequences(&[&p], NPolicy::Split), Err(Error::EmptyInput)));
    }

    #[test]
    fn missing_file_is_io_error() {
        assert!(matches!(read_raw(Path::new("/nonexistent/x.fa")), Err(Error::Io(_))));
    }
}
