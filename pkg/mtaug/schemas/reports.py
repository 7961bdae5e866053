from datetime import datetime
from typing import Any

from pydantic import BaseModel, Field, NonNegativeFloat, NonNegativeInt

from mtaug.core.enums import BleuBucket, IssueCategory


class BleuReport(BaseModel):
    """
    BLEU-4 result on the 0-1 scale.

    Attributes:
        score (float): brevity_penalty * geometric mean of the four precisions
        precisions (list[float]): modified n-gram precisions for n = 1..4
        brevity_penalty (float): exp(1 - ref/hyp) when the hypothesis is shorter, else 1
        hyp_length (int): hypothesis token count
        ref_length (int): reference token count
        bucket (BleuBucket): human-readable interpretation of the score
    """

    score: float = Field(..., ge=0.0, le=1.0)
    precisions: list[float] = Field(..., min_length=4, max_length=4)
    brevity_penalty: float = Field(..., ge=0.0, le=1.0)
    hyp_length: NonNegativeInt
    ref_length: NonNegativeInt
    bucket: BleuBucket

    def to_display(self, percent: bool = False) -> dict[str, Any]:
        """JSON-ready dict, optionally on the 0-100 scale (bucket unchanged)."""
        payload = self.model_dump(mode="json")
        if percent:
            payload["score"] = self.score * 100
            payload["precisions"] = [value * 100 for value in self.precisions]
        return payload


class TriagedPair(BaseModel):
    index: NonNegativeInt
    score: float = Field(..., ge=0.0, le=1.0)
    category: IssueCategory


class TriageReport(BaseModel):
    """Pairs whose sentence BLEU falls inside the closed band, with issue tallies."""

    band: tuple[float, float]
    selected: list[TriagedPair] = Field(default_factory=list)
    counts: dict[IssueCategory, int] = Field(default_factory=dict)
    category_scores: dict[IssueCategory, BleuReport] = Field(default_factory=dict)

    def to_display(self, percent: bool = False) -> dict[str, Any]:
        payload = self.model_dump(mode="json")
        if percent:
            for item in payload["selected"]:
                item["score"] = item["score"] * 100
            payload["category_scores"] = {
                category.value: report.to_display(percent=True)
                for category, report in self.category_scores.items()
            }
        return payload


class RunManifest(BaseModel):
    """Provenance record written next to every augmented corpus."""

    tool_version: str
    run_id: str
    method: str
    parameters: dict[str, Any]
    master_seed: NonNegativeInt
    append_original: bool
    input_pairs: NonNegativeInt
    synthetic_pairs: NonNegativeInt
    output_pairs: NonNegativeInt
    augmentation_ratio: NonNegativeFloat
    checksums: dict[str, str]
    outputs: dict[str, str]
    created_at: datetime
    duration_seconds: NonNegativeFloat


class CommandResponse(BaseModel):
    """
    Envelope for CLI failures printed on stdout.

    Attributes:
        success (bool): Whether the command succeeded
        message (str): Human-readable description
        error (str): Error class name when success is false
        data (Any): Optional payload
        run_id (str): The run id of the invocation
    """

    success: bool = Field(..., description="Indicates if the command was successful")
    message: str | None = Field(None, description="Human-readable success/error message")
    error: str | None = Field(None, description="Error class name")
    data: Any | None = Field(None, description="Main payload")
    run_id: str | None = Field(description="Run ID for debugging and correlation")
