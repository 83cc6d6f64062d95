# Placeholder test file
