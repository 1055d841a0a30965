def add(x, y):
    """Return the sum."""
    return x + y

n, m = map(int, input().split())
print(add(n, m))
