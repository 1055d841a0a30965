def f(u, v):
  # add them
  return u+v
s, t = map(int, input().split())
print(f(s, t))
