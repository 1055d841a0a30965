text = input()

print(text)
