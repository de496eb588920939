# Test utilities package
