"""Meta-analysis of wetland ecosystem-service valuation studies."""
