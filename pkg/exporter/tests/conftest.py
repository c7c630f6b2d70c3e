import json
import string

import pytest
import torch


@pytest.fixture(scope="session")
def tiny_encoder(tmp_path_factory):
    """A small randomly initialized transformer saved locally.

    Character-level wordpieces cover any lowercase alphanumeric word, so
    no test input hits [UNK].
    """
    from transformers import BertConfig, BertModel, BertTokenizerFast

    target = tmp_path_factory.mktemp("tiny-encoder")
    chars = list(string.ascii_lowercase + string.digits)
    vocab = ["[PAD]", "[UNK]", "[CLS]", "[SEP]", "[MASK]"]
    vocab += chars + ["##" + c for c in chars]
    vocab += ["the", "virus", "spread", "news", "report", "##ing"]
    (target / "vocab.txt").write_text("\n".join(vocab), encoding="utf-8")

    tokenizer = BertTokenizerFast(vocab_file=str(target / "vocab.txt"), do_lower_case=True)
    torch.manual_seed(1234)
    config = BertConfig(
        vocab_size=len(vocab),
        hidden_size=32,
        num_hidden_layers=1,
        num_attention_heads=2,
        intermediate_size=48,
        max_position_embeddings=128,
    )
    model = BertModel(config)
    model.save_pretrained(target)
    tokenizer.save_pretrained(target)
    return target


@pytest.fixture(scope="session")
def tiny_corpus(tmp_path_factory):
    path = tmp_path_factory.mktemp("corpus") / "tiny.jsonl"
    records = [
        {"id": "n1", "text": "The virus spread fast. Reports keep coming in.", "label": 0},
        {"id": "n2", "text": "Virus news was calm today, the report said.", "label": 1},
        {"id": "n3", "text": "Quiet day with no urgent news at all.", "label": 1},
    ]
    with open(path, "w", encoding="utf-8") as handle:
        for rec in records:
            handle.write(json.dumps(rec) + "\n")
    return path
