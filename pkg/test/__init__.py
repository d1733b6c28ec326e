# Test package for xell
