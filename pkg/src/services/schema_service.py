import json
import os
from functools import lru_cache
from typing import Any, Dict

from jsonschema import Draft7Validator

SCHEMA_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__)))), "schemas")
SCHEMA_KINDS = ("gen", "acf", "lc", "numbers", "survey", "verify")


@lru_cache(maxsize=None)
def _load_validator(kind: str) -> Draft7Validator:
    path = os.path.join(SCHEMA_DIR, f"{kind}.schema.json")
    with open(path, "r", encoding="utf-8") as f:
        schema = json.load(f)
    Draft7Validator.check_schema(schema)
    return Draft7Validator(schema)


class SchemaService:
    def __init__(self, schema_dir: str = SCHEMA_DIR):
        self.schema_dir = schema_dir

    def get_validator(self, kind: str) -> Draft7Validator:
        """
        读取 schemas/<kind>.schema.json 并构造校验器

        Args:
            kind: 子命令名

        Returns:
            Draft7Validator: 校验器（同一 kind 复用）
        """
        if kind not in SCHEMA_KINDS:
            raise ValueError(f"未知的输出类型: {kind}，可选 {list(SCHEMA_KINDS)}")
        if self.schema_dir != SCHEMA_DIR:
            path = os.path.join(self.schema_dir, f"{kind}.schema.json")
            with open(path, "r", encoding="utf-8") as f:
                return Draft7Validator(json.load(f))
        return _load_validator(kind)

    def validate(self, kind: str, document: Dict[str, Any]) -> None:
        """校验文档，不通过时抛出 jsonschema.ValidationError（取路径最深的一条）"""
        validator = self.get_validator(kind)
        errors = sorted(validator.iter_errors(document), key=lambda e: len(e.absolute_path), reverse=True)
        if errors:
            raise errors[0]

    def is_valid(self, kind: str, document: Dict[str, Any]) -> bool:
        return self.get_validator(kind).is_valid(document)
