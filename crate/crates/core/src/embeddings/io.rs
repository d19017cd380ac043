use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use super::bigram::BigramTable;
use super::{EmbeddingError, EmbeddingModel, Hyperparameters, DIMENSION};

const MAGIC: &[u8; 8] = b"PMAPW2V1";

#[derive(Serialize, Deserialize)]
struct Header {
    dimension: usize,
    vocabulary: Vec<String>,
    counts: Vec<u64>,
    hyperparameters: Hyperparameters,
    bigrams: Vec<(String, String, String)>,
}

/// Layout: magic, u32 LE header length, JSON header, then the |V|×100
/// little-endian f32 matrix in vocabulary order.
pub fn write_model(model: &EmbeddingModel, mut w: impl Write) -> Result<(), EmbeddingError> {
    let header = Header {
        dimension: DIMENSION,
        vocabulary: model.vocabulary.clone(),
        counts: model.counts.clone(),
        hyperparameters: model.hyperparameters.clone(),
        bigrams: model.bigrams.iter().map(|((a, b), m)| (a.clone(), b.clone(), m.clone())).collect(),
    };
    let json = serde_json::to_vec(&header).map_err(|e| EmbeddingError::Format(e.to_string()))?;
    let len = u32::try_from(json.len()).map_err(|_| EmbeddingError::Format("header too large".into()))?;
    w.write_all(MAGIC)?;
    w.write_all(&len.to_le_bytes())?;
    w.write_all(&json)?;
    let mut buf = Vec::with_capacity(model.vectors.len() * 4);
    for x in &model.vectors {
        buf.extend_from_slice(&x.to_le_bytes());
    }
    w.write_all(&buf)?;
    Ok(())
}

pub fn read_model(mut r: impl Read) -> Result<EmbeddingModel, EmbeddingError> {
    let mut magic = [0u8; 8];
    r.read_exact(&mut magic)?;
    if &magic != MAGIC {
        return Err(EmbeddingError::Format("not a model file".into()));
    }
    let mut len = [0u8; 4];
    r.read_exact(&mut len)?;
    let mut json = vec![0u8; u32::from_le_bytes(len) as usize];
    r.read_exact(&mut json)?;
    let header: Header = serde_json::from_slice(&json).map_err(|e| EmbeddingError::Format(e.to_string()))?;
    if header.dimension != DIMENSION {
        return Err(EmbeddingError::Format(format!("dimension {} != {DIMENSION}", header.dimension)));
    }
    if header.counts.len() != header.vocabulary.len() {
        return Err(EmbeddingError::Format("counts and vocabulary differ in length".into()));
    }
    let mut raw = vec![0u8; header.vocabulary.len() * DIMENSION * 4];
    r.read_exact(&mut raw)?;
    let vectors = raw.chunks_exact(4).map(|c| f32::from_le_bytes([c[0], c[1], c[2], c[3]])).collect();
    let bigrams: BigramTable = header.bigrams.into_iter().map(|(a, b, m)| ((a, b), m)).collect();
    Ok(EmbeddingModel::new(header.vocabulary, header.counts, vectors, bigrams, header.hyperparameters))
}
