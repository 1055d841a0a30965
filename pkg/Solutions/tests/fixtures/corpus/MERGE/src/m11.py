length = int(input())


items = list(map(int, input().split()))
print(max(items))   # done
