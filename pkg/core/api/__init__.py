"""
core.api: JSON output layer of the subcommands.

  serializers – one DRF Serializer per command payload, rendered with
                JSONRenderer
  exceptions  – the {"error", "code", "detail"} envelope and exit codes
"""
