from rest_framework import serializers

from .metrics import render_percent
from .models import IdentifierMap, Verdict


class SubmissionRowSerializer(serializers.Serializer):
    """One row of ``metadata.csv``. Blank cells count as missing."""
    id = serializers.CharField(max_length=255)
    user_id = serializers.CharField(max_length=255, required=False, default='')
    submitted_at = serializers.IntegerField(min_value=0, required=False, default=0)
    verdict = serializers.CharField(max_length=64)
    language = serializers.CharField(max_length=64)
    is_public = serializers.BooleanField(required=False, default=False)

    def to_internal_value(self, data):
        data = {key: value.strip() for key, value in data.items()
                if key is not None and isinstance(value, str) and value.strip()}
        return super().to_internal_value(data)

    def validate_verdict(self, value):
        try:
            return Verdict.parse(value)
        except ValueError as exc:
            raise serializers.ValidationError(str(exc))


class IdentifierMapField(serializers.Field):
    """An IdentifierMap as an ordered array of ``[placeholder, original]`` pairs."""

    def to_representation(self, value):
        return [[placeholder, original] for placeholder, original in value]

    def to_internal_value(self, data):
        if not isinstance(data, list):
            raise serializers.ValidationError('Expected an array of [placeholder, name] pairs.')
        if not all(isinstance(pair, list) and len(pair) == 2 and all(isinstance(part, str) for part in pair)
                   for pair in data):
            raise serializers.ValidationError('Each entry must be a [placeholder, name] pair of strings.')
        return IdentifierMap(tuple((placeholder, original) for placeholder, original in data))


class NormalizedRowSerializer(serializers.Serializer):
    """A line of ``normalized/<problem_id>.jsonl``.

    Outlier rows carry ``reason`` instead of the text and the map.
    """
    submission_id = serializers.CharField()
    problem_id = serializers.CharField()
    normalized_text = serializers.CharField(trim_whitespace=False, allow_blank=True, required=False)
    identifier_map = IdentifierMapField(required=False)
    outlier = serializers.BooleanField(required=False, default=False)
    reason = serializers.CharField(required=False)

    def validate(self, attrs):
        if not attrs['outlier']:
            missing = [name for name in ('normalized_text', 'identifier_map') if name not in attrs]
            if missing:
                raise serializers.ValidationError({name: 'This field is required.' for name in missing})
        return attrs


class UniqueProgramSerializer(serializers.Serializer):
    normalized_text = serializers.CharField()
    duplicate_count = serializers.IntegerField()
    member_ids = serializers.ListField(child=serializers.CharField())
    earliest_submission = serializers.IntegerField()


class RankedSuggestionSerializer(serializers.Serializer):
    rank = serializers.IntegerField()
    duplicate_count = serializers.IntegerField()
    coverage_share = serializers.SerializerMethodField()
    coverage_percent = serializers.SerializerMethodField()
    representative_id = serializers.CharField()
    program_text = serializers.CharField()
    identifier_variants = serializers.SerializerMethodField()
    verification = serializers.SerializerMethodField()

    def get_coverage_share(self, suggestion):
        return float(suggestion.coverage_share)

    def get_coverage_percent(self, suggestion):
        return render_percent(suggestion.coverage_share)

    def get_identifier_variants(self, suggestion):
        field = IdentifierMapField()
        return [{'map': field.to_representation(identifier_map), 'count': count}
                for identifier_map, count in suggestion.identifier_variants]

    def get_verification(self, suggestion):
        result = self.context.get('verifications', {}).get(suggestion.rank)
        return None if result is None else str(result)


class RunConfigSerializer(serializers.Serializer):
    corpus_root = serializers.CharField()
    language = serializers.CharField(max_length=64)
    top_k = serializers.IntegerField(min_value=1)
    top_m = serializers.IntegerField(min_value=1)
    output_dir = serializers.CharField()
    parallelism = serializers.IntegerField(min_value=1)
    timeout_ms = serializers.IntegerField(min_value=1)
    interpreter = serializers.CharField(required=False, allow_null=True, default=None)
