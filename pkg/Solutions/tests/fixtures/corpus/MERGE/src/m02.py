n = int(input())
best = None
for v in map(int, input().split()):
    if best is None or v > best:
        best = v
print(best)
