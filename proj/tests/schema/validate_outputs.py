"""Run a miniature pipeline with the CLI and validate every JSON it writes
against docs/schemas. Usage: validate_outputs.py F2GAN_BINARY REPO_ROOT"""

import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema
from referencing import Registry, Resource


def load(path):
    with open(path, encoding="utf-8") as f:
        return json.load(f)


def main():
    binary, root = sys.argv[1], pathlib.Path(sys.argv[2])
    schema_dir = root / "docs" / "schemas"
    schemas = {p.name: load(p) for p in schema_dir.glob("*.schema.json")}
    registry = Registry().with_resources(
        (name, Resource.from_contents(s)) for name, s in schemas.items())

    def validate(doc_path, schema_name):
        schema = schemas[schema_name]
        jsonschema.Draft202012Validator.check_schema(schema)
        jsonschema.Draft202012Validator(schema, registry=registry).validate(load(doc_path))
        print(f"ok  {doc_path.name:28s} {schema_name}")

    for cfg in sorted((root / "configs").glob("*.json")):
        validate(cfg, "run_config.schema.json")

    with tempfile.TemporaryDirectory() as tmp:
        tmp = pathlib.Path(tmp)
        cfg = tmp / "cfg.json"
        cfg.write_text(json.dumps({
            "seed": 1,
            "scenario": {"external": {"samples_total": 120}, "internal": {"samples_total": 48}},
            "gan": {"epochs": 1, "batch_size": 16, "latent_dim": 4, "gen_hidden": [8], "disc_hidden": [8, 4]},
            "fidelity": {"bins": 8},
            "tstr": {"nn_epochs": 1, "svm_epochs": 1},
        }))

        def run(*args):
            subprocess.run([binary, *args, "--config", str(cfg)], check=True, stdout=subprocess.DEVNULL)

        run("fixture", "--out", str(tmp / "fx"))
        run("train", "--data", str(tmp / "fx" / "external.csv"), "--out", str(tmp / "m"))
        run("synth", "--model", str(tmp / "m" / "model.json"), "--per-class", "4", "--out", str(tmp / "s"))
        run("eval", "--real", str(tmp / "fx" / "external.csv"), "--synth", str(tmp / "s" / "synthetic.csv"),
            "--out", str(tmp / "e"))
        run("tstr", "--synth", str(tmp / "s" / "synthetic.csv"), "--real-test",
            str(tmp / "fx" / "external_holdout.csv"), "--out", str(tmp / "t"))

        validate(tmp / "fx" / "manifest.json", "manifest.schema.json")
        validate(tmp / "m" / "model.json", "model.schema.json")
        validate(tmp / "e" / "fidelity.json", "fidelity.schema.json")
        validate(tmp / "e" / "histograms.json", "histograms.schema.json")
        validate(tmp / "t" / "tstr.json", "tstr.schema.json")
        for echo in sorted(tmp.glob("*/*_config.json")):
            validate(echo, "run_config.schema.json")


if __name__ == "__main__":
    main()
