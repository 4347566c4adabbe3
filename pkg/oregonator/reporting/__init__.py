"""Files which describe the outcome of a run: the manifest and a human-readable summary"""
